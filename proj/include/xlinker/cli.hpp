// Copyright 2026 The XLinker Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

namespace xlinker {

// Command-line entry point: build-kb, gen-train, train, link, evaluate.
// Returns 0 on success, 1 on runtime/I-O failure, 2 on usage errors.
int run_cli(int argc, char** argv);

}  // namespace xlinker
