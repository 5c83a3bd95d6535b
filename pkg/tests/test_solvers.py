from __future__ import annotations

from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fairsets import reductions as red
from fairsets.core import CyclePartitionInstance, PathPartitionInstance, SignVector, all_sign_vectors
from fairsets.errors import BoundExceeded, InstanceError, OracleViolation, UsageError
from fairsets.measures import ConHalvInstance, PiecewiseConstantDensity, split_masses
from fairsets.oracles import TableColoring, TableLambda
from fairsets.problems import (
    IndependentSetSolution,
    OTuckerInstance,
    SchrijverInstance,
    SplitSolution,
    check_conhalv,
    check_fisc,
    check_fsplitc,
    check_fsplitp,
)
from fairsets.solvers import (
    Route,
    _full_split_search,
    _structured_path_split,
    NodeCounter,
    brute_fisc,
    brute_fsplit,
    brute_otucker,
    brute_schrijver,
    chromatic_number,
    generate_instance,
    kneser_coloring,
    pipeline_solve_conhalv,
    pipeline_solve_fisc,
    pipeline_solve_fsplitc_via_otucker,
    run_with_report,
    stable_subsets,
)

TWO_TRIPLES = CyclePartitionInstance(6, [[1, 2, 3], [4, 5, 6]])


class TestBruteFisc:
    def test_examples(self):
        assert brute_fisc(TWO_TRIPLES) == IndependentSetSolution({1, 3, 5})
        assert brute_fisc(CyclePartitionInstance(3, [[1, 2, 3]])) == IndependentSetSolution({1})

    def test_tiny_cycles(self):
        assert brute_fisc(CyclePartitionInstance(1, [[1]])) == IndependentSetSolution(())
        assert brute_fisc(CyclePartitionInstance(2, [[1, 2]])) == IndependentSetSolution(())

    def test_lexicographically_first(self):
        # compare against a plain enumeration of all subsets in sorted-tuple order
        from itertools import combinations

        for seed in range(60):
            inst = generate_instance("fisc", {"n": (1, 9), "m": (1, 3)}, seed)
            subsets = sorted(
                c for size in range(inst.n + 1) for c in combinations(range(1, inst.n + 1), size)
            )
            first = next(c for c in subsets if check_fisc(inst, IndependentSetSolution(c)) is None)
            assert brute_fisc(inst) == IndependentSetSolution(first)

    def test_bound(self):
        inst = generate_instance("fisc", {"n": 12, "m": 2}, 0)
        with pytest.raises(BoundExceeded):
            brute_fisc(inst, max_n=4)

    def test_cycle_plus_triangles(self):
        inst = generate_instance("cycle_plus_triangles", {"t": 4}, 0)
        assert inst.n == 12 and inst.sizes == (3, 3, 3, 3)
        sol = brute_fisc(inst)
        assert all(sol.vertices & set(p) for p in inst.parts)


class TestBruteFsplit:
    def test_examples(self):
        assert brute_fsplit(CyclePartitionInstance(3, [[1, 2, 3]]), 0) == SplitSolution({1}, {2})
        assert brute_fsplit(CyclePartitionInstance(3, [[1], [2], [3]]), 0) == SplitSolution((), ())

    def test_wrong_parity_or_even_parts(self):
        with pytest.raises(InstanceError):
            brute_fsplit(CyclePartitionInstance(4, [[1, 2, 3, 4]]), 0)
        with pytest.raises(InstanceError):
            brute_fsplit(PathPartitionInstance(4, [[1, 2, 3, 4]]), 0)

    def test_bounds(self):
        big_cycle = generate_instance("fsplitc", {"n": 20, "m": 2}, 0)
        with pytest.raises(BoundExceeded):
            brute_fsplit(big_cycle, 0)
        path = generate_instance("fsplitp", {"n": 41, "m": 3}, 0)
        with pytest.raises(BoundExceeded):
            brute_fsplit(path, 0, max_path_n=40)

    def test_lexicographically_first_cycle(self):
        from itertools import combinations

        for seed in range(40):
            inst = generate_instance("fsplitc", {"n": (1, 7), "m": (1, 3)}, seed)
            subsets = sorted(c for size in range(inst.n + 1) for c in combinations(range(1, inst.n + 1), size))
            first = next(
                (a, b)
                for a in subsets
                for b in subsets
                if check_fsplitc(inst, SplitSolution(a, b), 0) is None
            )
            assert brute_fsplit(inst, 0) == SplitSolution(*first)

    @given(st.integers(0, 10_000), st.sampled_from([F(0), F(1, 10), F(1, 4)]))
    @settings(max_examples=60, deadline=None)
    def test_structured_search_agrees_on_existence(self, seed, eps):
        path = generate_instance("fsplitp", {"n": (1, 15), "m": (1, 4)}, seed)
        full = _full_split_search(path, eps, NodeCounter())
        structured = _structured_path_split(path, eps, NodeCounter())
        assert full is not None and structured is not None
        assert check_fsplitp(path, structured, eps) is None

    def test_structured_search_on_long_path(self):
        path = generate_instance("fsplitp", {"n": 61, "m": 3}, 5)
        sol = brute_fsplit(path, 0, max_n=10)
        assert check_fsplitp(path, sol, 0) is None


class TestBruteOTucker:
    def test_first_nonzero_labeling(self):
        lam = TableLambda(2, {x: x.first_nonzero() for x in all_sign_vectors(2)})
        x, y = brute_otucker(OTuckerInstance(2, lam))
        assert (x, y) == (SignVector("0-"), SignVector("+-"))

    def test_non_antipodal_table(self):
        lam = TableLambda(2, {x: 1 for x in all_sign_vectors(2)})
        with pytest.raises(OracleViolation):
            brute_otucker(OTuckerInstance(2, lam))

    def test_bound(self):
        inst = red.fsplitc_to_otucker(generate_instance("fsplitc", {"n": 12, "m": 2}, 0))
        with pytest.raises(BoundExceeded):
            brute_otucker(inst)

    @pytest.mark.parametrize("seed", range(30))
    def test_lazy_and_tabulated_phases_agree(self, seed):
        inst = generate_instance("otucker", {"n": (2, 6)}, seed)
        assert brute_otucker(inst, lazy_budget=10**9) == brute_otucker(inst, lazy_budget=0)

    def test_derived_oracles_at_the_bound(self):
        inst = CyclePartitionInstance(10, [[1, 2, 3, 4, 5, 6], [7, 8, 9, 10]])
        ot = red.fsplitc_to_otucker(inst)
        sol = red.otucker_backmap_to_fsplitc(inst, *brute_otucker(ot))
        assert check_fsplitc(inst, sol, 0) is None


class TestBruteSchrijver:
    def test_constant_coloring(self):
        inst = SchrijverInstance(6, 2, TableColoring(6, 2, {s: 1 for s in stable_subsets(6, 2)}))
        a, b = brute_schrijver(inst)
        assert (a.elements, b.elements) == ((1, 3), (2, 4))

    def test_derived_single_triple(self):
        sch, _ = red.fisc_to_schrijver(CyclePartitionInstance(3, [[1, 2, 3]]))
        a, b = brute_schrijver(sch)
        assert sch.coloring(a) == sch.coloring(b) == 2

    def test_proper_coloring_table(self):
        for n, k in [(5, 2), (6, 2), (7, 3)]:
            # the proper coloring needs n - 2k + 2 colors, so widen the table's declared range
            inst = SchrijverInstance(n, k, _WideTable(n, k, kneser_coloring(n, k)))
            with pytest.raises(OracleViolation):
                brute_schrijver(inst)

    def test_bound(self):
        inst = SchrijverInstance(12, 2, TableColoring(12, 2, {s: 1 for s in stable_subsets(12, 2)}))
        with pytest.raises(BoundExceeded):
            brute_schrijver(inst, max_vertices=10)


class _WideTable(TableColoring):
    """A table whose range check admits one color too many."""

    @property
    def num_colors(self) -> int:
        return self.n - 2 * self.k + 2


class TestChromaticNumber:
    @pytest.mark.parametrize("n,k,expected", [(5, 2, 3), (6, 2, 4), (4, 2, 2), (6, 3, 2), (8, 4, 2)])
    def test_values(self, n, k, expected):
        assert chromatic_number(n, k) == expected

    def test_bound_and_usage(self):
        with pytest.raises(BoundExceeded):
            chromatic_number(12, 3)
        with pytest.raises(UsageError):
            chromatic_number(3, 2)

    def test_kneser_coloring_is_proper(self):
        for n, k in [(5, 2), (7, 2), (8, 3)]:
            c = kneser_coloring(n, k)
            assert max(c.values()) == n - 2 * k + 2
            sets = list(c)
            assert all(c[a] != c[b] for a in sets for b in sets if not set(a) & set(b))


class TestPipelines:
    @pytest.mark.parametrize("route", list(Route))
    def test_two_triples(self, route):
        assert check_fisc(TWO_TRIPLES, pipeline_solve_fisc(TWO_TRIPLES, route)) is None

    def test_single_part_counts(self):
        for n in (3, 5, 7, 9):
            inst = CyclePartitionInstance(n, [list(range(1, n + 1))])
            sol = pipeline_solve_fisc(inst, "via_schrijver")
            assert len(sol.vertices) == (n - 1) // 2

    def test_trivial_k(self):
        inst = CyclePartitionInstance(4, [[1, 2], [3, 4]])
        assert pipeline_solve_fisc(inst) == IndependentSetSolution(())

    def test_fsplitc_via_otucker(self):
        assert pipeline_solve_fsplitc_via_otucker(CyclePartitionInstance(2, [[1], [2]])) == SplitSolution((), ())
        for inst in (CyclePartitionInstance(5, [[1, 2, 3, 4, 5]]), CyclePartitionInstance(6, [[1, 2, 3], [4, 5, 6]])):
            sol = pipeline_solve_fsplitc_via_otucker(inst)
            assert check_fsplitc(inst, sol, 0) is None

    def test_conhalv_uniform(self):
        uniform = PiecewiseConstantDensity.uniform()
        inst = ConHalvInstance((uniform,), F(2, 5), 2)
        sol = pipeline_solve_conhalv(inst)
        assert check_conhalv(inst, sol) is None
        plus, _ = split_masses(uniform, sol)
        assert abs(plus - F(1, 2)) <= F(1, 5)

    def test_conhalv_two_blocks(self):
        d = PiecewiseConstantDensity.from_weights([(F(0), F(1, 4)), (F(1, 2), F(3, 4))], [1, 1])
        inst = ConHalvInstance((d,), F(1, 2), 2)
        sol = pipeline_solve_conhalv(inst)
        assert len(sol.cuts) <= 2 and check_conhalv(inst, sol) is None


class TestReports:
    def test_report(self):
        report = run_with_report(brute_fisc, TWO_TRIPLES)
        assert report.solution == IndependentSetSolution({1, 3, 5})
        assert report.nodes_explored > 0 and report.elapsed >= 0

    def test_determinism(self):
        inst = generate_instance("fisc", {"n": 12, "m": 4}, 7)
        assert generate_instance("fisc", {"n": 12, "m": 4}, 7) == inst
        assert brute_fisc(inst) == brute_fisc(inst)


class TestGenerators:
    def test_families(self):
        assert generate_instance("all_singleton", {"n": 5}, 0).m == 5
        assert generate_instance("single_part", {"n": 5}, 0).m == 1
        for seed in range(50):
            inst = generate_instance("fsplitc", {"n": (1, 14), "m": (1, 4)}, seed)
            assert (inst.n - inst.m) % 2 == 0
            assert generate_instance("fsplitp", {"n": (1, 14), "m": (1, 4)}, seed).all_parts_odd()

    @pytest.mark.parametrize(
        "kind,params",
        [
            ("fsplitc", {"n": 7, "m": 2}),
            ("fisc", {"n": (5, 3)}),
            ("fisc", {"n": 3, "m": 4}),
            ("nope", {}),
            ("schrijver", {"n": 14, "k": 2}),
            ("conhalv", {"eps": "0"}),
            ("fisc", {}),
        ],
    )
    def test_invalid_params(self, kind, params):
        with pytest.raises(UsageError):
            generate_instance(kind, params, 0)
