from __future__ import annotations

import json
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fairsets import reductions as red
from fairsets import serialization as ser
from fairsets.core import SignVector, StableKSubset, all_sign_vectors
from fairsets.errors import UsageError
from fairsets.generators import generate_instance
from fairsets.measures import CutLabelSolution
from fairsets.oracles import TableColoring, TableLambda
from fairsets.problems import IndependentSetSolution, OTuckerInstance, SchrijverInstance, SplitSolution

GEN_CASES = [
    ("fisc", "fisc", {"n": (1, 14), "m": (1, 4)}),
    ("fsplitc", "fsplitc", {"n": (1, 14), "m": (1, 4)}),
    ("fsplitp", "fsplitp", {"n": (1, 14), "m": (1, 4)}),
    ("conhalv", "conhalv", {"measures": (1, 2), "blocks": (1, 2), "eps": "2/5"}),
    ("schrijver", "schrijver", {"n": (4, 9), "k": (1, 3)}),
    ("otucker", "otucker", {"n": (2, 6)}),
]


def _no_floats(obj) -> bool:
    if isinstance(obj, float):
        return False
    if isinstance(obj, dict):
        return all(_no_floats(v) for v in obj.values())
    if isinstance(obj, list):
        return all(_no_floats(v) for v in obj)
    return True


def _round_trip(doc):
    text = ser.dumps(doc)
    again = ser.loads(text)
    assert again == doc
    return again


def _same_oracle_values(kind, a, b):
    if kind == "schrijver":
        from fairsets.core import stable_subsets

        return all(a.coloring(s) == b.coloring(s) for s in stable_subsets(a.n, a.k))
    if kind == "otucker":
        return all(a.lam(x) == b.lam(x) for x in all_sign_vectors(a.n))
    return a == b


class TestRationals:
    def test_format(self):
        assert ser.rational(F(2, 5)) == "2/5"
        assert ser.rational(F(3)) == "3/1"
        assert ser.parse_rational("2/5") == F(2, 5)

    def test_floats_rejected(self):
        with pytest.raises(UsageError):
            ser.parse_rational(0.4)

    @given(st.fractions(max_denominator=10**6))
    def test_round_trip(self, q):
        assert ser.parse_rational(ser.rational(q)) == q


class TestInstances:
    @pytest.mark.parametrize("gen_kind,kind,params", GEN_CASES)
    @pytest.mark.parametrize("seed", range(15))
    def test_round_trip(self, gen_kind, kind, params, seed):
        inst = generate_instance(gen_kind, params, seed)
        eps = F(1, 10) if kind in ("fsplitc", "fsplitp") else None
        doc = ser.instance_document(kind, inst, eps)
        assert _no_floats(doc)
        parsed_kind, parsed, parsed_eps = ser.parse_instance(_round_trip(doc))
        assert parsed_kind == kind and parsed_eps == eps
        assert _same_oracle_values(kind, parsed, inst)
        assert ser.instance_document(kind, parsed, parsed_eps) == doc

    def test_canonical_text(self):
        inst = generate_instance("fisc", {"n": 6, "m": 2}, 3)
        text = ser.dumps(ser.instance_document("fisc", inst))
        assert text.endswith("\n")
        assert text == json.dumps(json.loads(text), sort_keys=True, indent=2) + "\n"
        assert json.loads(text)["payload"]["parts"] == [list(p) for p in inst.parts]

    def test_derived_descriptors(self):
        cyc = generate_instance("fisc", {"n": 9, "m": 2}, 1)
        sch, _ = red.fisc_to_schrijver(cyc)
        ot = red.schrijver_to_otucker(sch)
        split = generate_instance("fsplitc", {"n": 6, "m": 2}, 1)
        for kind, inst in (("schrijver", sch), ("otucker", ot), ("otucker", red.fsplitc_to_otucker(split))):
            doc = ser.instance_document(kind, inst)
            _, parsed, _ = ser.parse_instance(_round_trip(doc))
            assert _same_oracle_values(kind, parsed, inst)
            assert ser.instance_document(kind, parsed) == doc

    def test_table_guard(self):
        big = TableLambda(13, {})
        with pytest.raises(UsageError):
            ser.instance_document("otucker", OTuckerInstance(13, big))
        doc = {"schema_version": 1, "kind": "otucker", "payload": {"n": 13, "lambda": {"kind": "table", "n": 13, "entries": {}}}}
        with pytest.raises(UsageError):
            ser.parse_instance(doc)

    def test_tampered_descriptor(self):
        sch, _ = red.fisc_to_schrijver(generate_instance("fisc", {"n": 9, "m": 2}, 1))
        doc = ser.instance_document("schrijver", sch)
        doc["payload"]["coloring"]["k"] += 1
        with pytest.raises(UsageError):
            ser.parse_instance(doc)

    @pytest.mark.parametrize(
        "doc",
        [
            [],
            {"schema_version": 2, "kind": "fisc", "payload": {"n": 1, "parts": [[1]]}},
            {"schema_version": 1, "kind": "nope", "payload": {}},
            {"schema_version": 1, "kind": "fisc", "payload": {"n": 2}},
            {"schema_version": 1, "kind": "fisc", "payload": {"n": 2, "parts": [[1, 1.0]]}},
            {"schema_version": 1, "kind": "fsplitc", "payload": {"n": 1, "parts": [[1]], "eps": 0.1}},
        ],
    )
    def test_malformed(self, doc):
        with pytest.raises(UsageError):
            ser.parse_instance(doc)

    def test_bad_json(self):
        with pytest.raises(UsageError):
            ser.loads("{not json")


class TestSolutions:
    def test_round_trip_every_kind(self):
        sch = SchrijverInstance(6, 2, TableColoring(6, 2, {}))
        cases = [
            ("fisc", IndependentSetSolution({1, 3, 5}), None),
            ("fsplitc", SplitSolution({1, 4}, {2}), None),
            ("fsplitp", SplitSolution((), ()), None),
            ("conhalv", CutLabelSolution((F(1, 3), F(2, 3)), (1, -1, 1)), None),
            ("schrijver", (StableKSubset(6, 2, (1, 3)), StableKSubset(6, 2, (2, 4))), sch),
            ("otucker", (SignVector("0-"), SignVector("+-")), None),
        ]
        for kind, sol, inst in cases:
            doc = ser.solution_document(kind, sol, {"solver": "test"})
            assert _no_floats(doc)
            parsed_kind, parsed = ser.parse_solution(_round_trip(doc), inst)
            assert parsed_kind == kind and parsed == sol
            assert ser.solution_document(kind, parsed, {"solver": "test"}) == doc

    def test_conhalv_labels_are_strings(self):
        doc = ser.solution_document("conhalv", CutLabelSolution((F(1, 2),), (1, -1)))
        assert doc["payload"] == {"cuts": ["1/2"], "labels": ["+", "-"]}

    def test_schrijver_needs_instance(self):
        doc = ser.solution_document("schrijver", (StableKSubset(6, 2, (1, 3)), StableKSubset(6, 2, (2, 4))))
        with pytest.raises(UsageError):
            ser.parse_solution(doc)


class TestContexts:
    @given(st.integers(0, 500))
    @settings(max_examples=25, deadline=None)
    def test_discretization_round_trip(self, seed):
        inst = generate_instance("conhalv", {"measures": (1, 2), "blocks": (1, 2)}, seed)
        _, ctx = red.conhalv_to_fsplitp(inst)
        payload = ser.discretization_payload(ctx)
        assert _no_floats(payload)
        assert ser.parse_discretization(json.loads(json.dumps(payload))) == ctx

    @given(st.integers(0, 500))
    @settings(max_examples=25, deadline=None)
    def test_relabel_round_trip(self, seed):
        inst = generate_instance("fisc", {"n": (3, 14), "m": (1, 3)}, seed)
        if all(s <= 2 for s in inst.sizes):
            return
        _, ctx = red.fisc_to_schrijver(inst)
        payload = ser.relabel_payload(ctx)
        assert ser.parse_relabel(json.loads(json.dumps(payload))) == ctx
