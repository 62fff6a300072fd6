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

"""End-to-end smoke checks for the python bindings.

Runs with a plain interpreter: ``python tests/python/test_smoke.py``.
"""

import math
import os
import tempfile

import xlinker

KOS_TSV = (
    "# DiseaseName\tDiseaseID\tAltDiseaseIDs\tDefinition\tParentIDs\t"
    "TreeNumbers\tParentTreeNumbers\tSynonyms\n"
    "Vasculitis\tMESH:D014657\tMESH:D014656\tInflammation of vessels.\t"
    "MESH:ROOT\tC14.907.940\tC14\tAngiitis|Vasculitides\n"
    "Giant Cell Arteritis\tMESH:D013700\t\t\tMESH:D014657\t"
    "C14.907.940.090\tC14.907.940\tTemporal Arteritis\n"
    "Arthritis\tMESH:D001168\t\t\tMESH:ROOT\tC05.550.114\tC05\t"
    "Polyarthritis\n"
    "Root\tMESH:ROOT\t\t\t\t\t\t\n"
)

TRAIN_TSV = (
    "0\tangiitis\n"
    "0\tvasculitides\n"
    "0\tvasculitis\n"
    "1\tgiant cell arteritis\n"
    "1\ttemporal arteritis\n"
    "2\tarthritis\n"
    "2\tpolyarthritis\n"
    "3\troot\n"
)

PUBTATOR = (
    "900|t|Case report of vasculitis.\n"
    "900|a|\n"
    "900\t15\t25\tvasculitis\tDisease\tMESH:D014657\n"
    "\n"
)

ABSTRACT = "Giant cell arteritis (GCA) affects the elderly. GCA is treated."


def check_kb(kb):
    assert len(kb) == 4
    assert kb.index_of("D014657") == 0
    assert kb.id_of(0) == "D014657"
    assert kb.contains("D013700")
    assert not kb.contains("D999999")
    assert kb.resolve("D014656") == 0  # alternate id maps to its owner
    assert kb.resolve("D999999") is None
    assert kb.children_count(3) == 2
    assert kb.information_content(0) > 0.0
    c = kb.concept(0)
    assert c.id == "D014657"
    assert c.canonical_name == "Vasculitis"
    assert "Angiitis" in c.synonyms


def check_strings():
    assert xlinker.edit_distance("kitten", "sitting") == 3
    assert xlinker.edit_distance("", "abc") == 3
    assert xlinker.similarity("vasculitic", "vasculitis") == 0.9
    assert xlinker.similarity("", "") == 1.0


def check_abbreviations():
    pairs = xlinker.detect_abbreviations(ABSTRACT)
    assert pairs["GCA"] == "Giant cell arteritis"
    assert xlinker.expand("GCA", ABSTRACT) == "Giant cell arteritis"
    assert xlinker.expand("unrelated", ABSTRACT) == "unrelated"


def check_name_index(kb):
    index = xlinker.build_name_index(kb)
    assert len(index) == 8  # names plus synonyms, lowercased
    matches = index.match(kb, "vasculitis", 3)
    assert matches[0][0] == "D014657"
    assert matches[0][1] == 1.0
    assert matches[0][2] == "vasculitis"
    fuzzy = index.match(kb, "vasculitic", 1)
    assert fuzzy[0][0] == "D014657"
    assert math.isclose(fuzzy[0][1], 0.9)


def check_model(kb, workdir):
    train_path = os.path.join(workdir, "train.tsv")
    with open(train_path, "w") as fh:
        fh.write(TRAIN_TSV)
    model = xlinker.train(train_path, max_leaf_size=1, seed=42)
    assert model.num_labels == 4
    assert model.num_features > 0

    preds = xlinker.predict(model, kb, "vasculitis", beam=10, top_k=5)
    assert preds[0][0] == "D014657"
    assert preds[0][1] == 1.0
    assert preds[0][2] == "exact-lookup"
    preds = xlinker.predict(model, kb, "Temporal Arteritis")
    assert preds[0][0] == "D013700"
    assert preds[0][1] == 1.0

    model_dir = os.path.join(workdir, "model")
    xlinker.save_model(model, model_dir)
    loaded = xlinker.load_model(model_dir)
    for query in ("vasculitis", "arteritis of the temple", "polyarthritis"):
        assert xlinker.predict(model, kb, query) == xlinker.predict(
            loaded, kb, query
        )

    raised = False
    try:
        xlinker.load_model(os.path.join(workdir, "no_such_model"))
    except xlinker.ParseError:
        raised = True
    assert raised
    return model


def check_linking(kb, model, workdir):
    corpus_path = os.path.join(workdir, "corpus.txt")
    with open(corpus_path, "w") as fh:
        fh.write(PUBTATOR)
    out_path = os.path.join(workdir, "preds.txt")
    cfg = xlinker.PipelineConfig()
    cfg.top_k = 3
    linked = xlinker.link_file(model, kb, corpus_path, out_path, cfg)
    assert linked == 1
    with open(out_path) as fh:
        text = fh.read()
    assert "900\t15\t25\tvasculitis\tDisease\tMESH:D014657\tD014657" in text


def main():
    with tempfile.TemporaryDirectory() as workdir:
        kos_path = os.path.join(workdir, "kos.tsv")
        with open(kos_path, "w") as fh:
            fh.write(KOS_TSV)
        kb = xlinker.load_kos(kos_path)
        check_kb(kb)
        check_strings()
        check_abbreviations()
        check_name_index(kb)
        model = check_model(kb, workdir)
        check_linking(kb, model, workdir)
    print("smoke checks passed")


if __name__ == "__main__":
    main()
