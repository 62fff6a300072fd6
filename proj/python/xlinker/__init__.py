# Copyright 2026 The XLinker Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Biomedical entity linking over CTD-style vocabularies."""

from ._xlinker import (
    Concept,
    IntegrityError,
    KnowledgeBase,
    KosLookupError,
    Model,
    NameIndex,
    ParseError,
    PipelineConfig,
    build_name_index,
    detect_abbreviations,
    edit_distance,
    expand,
    link_file,
    load_kos,
    load_model,
    predict,
    save_model,
    similarity,
    train,
)

__all__ = [
    "Concept",
    "IntegrityError",
    "KnowledgeBase",
    "KosLookupError",
    "Model",
    "NameIndex",
    "ParseError",
    "PipelineConfig",
    "build_name_index",
    "detect_abbreviations",
    "edit_distance",
    "expand",
    "link_file",
    "load_kos",
    "load_model",
    "predict",
    "save_model",
    "similarity",
    "train",
]

__version__ = "0.1.0"
