from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from harary.distances import graph_stats
from harary.formulas import (
    APEX,
    RM,
    Coverage,
    DiameterRule,
    ResidueRule,
    apex_removal_closeness,
    circulant_closeness_formula,
    class_reconstruction,
    class_sizes,
    classify_vertex,
    closeness_formula,
    diameter_formula,
    residual_formula,
    residue_t,
    ring_group,
    tail_sum,
    vertex_closeness_formula_odd_odd,
)
from harary.graphs import HararyParams, ParameterError, ParityCase, build_harary
from harary.oracle import closeness_after_removal, graph_closeness, residual_closeness
from harary.verify import SweepConfig

P = HararyParams


def grid(k_max=12, n_max=256):
    return [P(k, n) for k in range(2, k_max + 1) for n in range(max(5, k + 1), n_max + 1)]


def odd_odd(cells):
    return [p for p in cells if p.parity_case is ParityCase.ODD_K_ODD_N]


class TestDiameter:
    @pytest.mark.parametrize("k,n,d", [(4, 9, 2), (5, 18, 3), (3, 11, 3), (5, 24, 4), (5, 12, 2)])
    def test_examples(self, k, n, d):
        assert diameter_formula(P(k, n)).value == d

    def test_inner_diameter_traced(self):
        tr = diameter_formula(P(5, 18)).trace
        assert (tr.theorem_id, tr.inner_diam, tr.inner_diam_parity) == ("Diam-oddk-evenn", 5, "odd")

    def test_k2_not_covered(self):
        res = diameter_formula(P(2, 9))
        assert res.coverage is Coverage.NOT_COVERED and res.value is None

    def test_rules_agree_outside_odd_odd(self):
        for p in grid(n_max=80):
            if p.parity_case is not ParityCase.ODD_K_ODD_N:
                assert diameter_formula(p, DiameterRule.EXACT) == diameter_formula(p, DiameterRule.PUBLISHED)

    def test_published_rule_disagreement_set(self):
        # the printed odd-odd rule only adds one at residue 1; BFS needs it at every residue <= k-4
        differing = [
            p for p in odd_odd(grid())
            if diameter_formula(p).value != diameter_formula(p, DiameterRule.PUBLISHED).value
        ]
        expected = [
            p for p in odd_odd(grid())
            if p.k >= 7 and 3 <= (p.n - p.k - 1) % (2 * p.k - 2) <= p.k - 4
        ]
        assert differing == expected
        assert len(differing) == 90

    @pytest.mark.parametrize("k,n", [(7, 23), (9, 29), (9, 31), (11, 35), (11, 37), (11, 39)])
    def test_contested_cells_follow_bfs(self, k, n):
        bfs = graph_stats(build_harary(P(k, n))).diameter
        assert diameter_formula(P(k, n)).value == bfs
        assert diameter_formula(P(k, n), DiameterRule.PUBLISHED).value == bfs - 1

    def test_odd_odd_residue_is_odd(self):
        assert all(residue_t(p, ResidueRule.ODD_K_ODD_N) % 2 == 1 for p in odd_odd(grid()))


class TestCloseness:
    @pytest.mark.parametrize(
        "k,n,value,tid",
        [
            (4, 9, 27.0, "Thm2.1-t0"),
            (4, 11, 35.75, "Thm2.1-t"),
            (5, 12, 48.0, "Thm2.2-diam2"),
            (7, 22, 148.5, "Thm2.3-even-inner-diam"),
            (5, 18, 90.0, "Thm2.4-odd-inner-diam"),
            (5, 24, 135.0, "Thm2.5-even-inner-diam"),
            (3, 12, 36.0, "Cor2.6-even-inner-diam"),
            (3, 10, 27.5, "Cor2.6-odd-inner-diam"),
            (5, 17, 83.75, "Thm2.8"),
        ],
    )
    def test_anchor_cells(self, k, n, value, tid):
        res = closeness_formula(P(k, n))
        assert res.trace.theorem_id == tid
        assert res.value == pytest.approx(value, abs=1e-9)
        assert graph_closeness(build_harary(P(k, n))).total == pytest.approx(value, abs=1e-9)

    def test_thm28_trace(self):
        tr = closeness_formula(P(5, 17)).trace
        assert (tr.t, tr.A, tr.B, tr.diam) == (3, 4, Fraction(1, 2), 3)

    def test_k2_not_covered(self):
        assert not closeness_formula(P(2, 7)).covered

    @given(st.integers(5, 90), st.data())
    def test_matches_oracle(self, n, data):
        p = P(data.draw(st.integers(3, n - 1)), n)
        assert closeness_formula(p).value == pytest.approx(graph_closeness(build_harary(p)).total, abs=1e-9)

    def test_thm28_holds_for_k3(self):
        # k = 3 with odd n goes through the general odd-odd form, not a k = 3 special case
        for n in range(9, 200, 2):
            p = P(3, n)
            res = closeness_formula(p)
            assert res.trace.theorem_id == "Thm2.8"
            assert res.value == pytest.approx(graph_closeness(build_harary(p)).total, abs=1e-9)

    def test_thm27_diam1_is_unreachable_with_exact_rule(self):
        # odd k and odd n force k <= n - 2, so H(k, n) is never complete
        ids = {closeness_formula(p).trace.theorem_id for p in odd_odd(grid())}
        assert "Thm2.7-diam1" not in ids
        assert all(p.k <= p.n - 2 for p in odd_odd(grid()))

    def test_thm23_vacuous_for_k5(self):
        ids = {closeness_formula(P(5, n)).trace.theorem_id for n in range(6, 400, 2)}
        assert not any(i.startswith("Thm2.3") for i in ids)


class TestTailSum:
    @pytest.mark.parametrize("h", range(0, 61))
    def test_matches_literal_sum(self, h):
        literal = sum(Fraction(i - 1, 2**i) for i in range(2, h + 1))
        assert abs(tail_sum(h) - float(literal)) <= 1e-15


class TestVertexClasses:
    @pytest.mark.parametrize("cls,value", [(APEX, 5.25), (ring_group(0), 5.0), (RM, 4.875)])
    def test_h5_17(self, cls, value):
        assert vertex_closeness_formula_odd_odd(P(5, 17), cls) == value

    def test_classify_h5_17(self):
        p = P(5, 17)
        assert classify_vertex(p, 8) == APEX
        assert [classify_vertex(p, v) for v in (6, 7, 9, 10)] == [ring_group(0)] * 4
        assert classify_vertex(p, 0) == RM and classify_vertex(p, 11) == RM

    def test_class_sizes_partition(self):
        for p in odd_odd(grid(n_max=120)):
            if diameter_formula(p).value > 2:
                sizes = class_sizes(p)
                assert sum(sizes.values()) == p.n
                counted = {}
                for v in range(p.n):
                    c = classify_vertex(p, v)
                    counted[c] = counted.get(c, 0) + 1
                assert counted == sizes

    def test_reconstruction_is_exact(self):
        for p in odd_odd(grid()):
            if diameter_formula(p).value > 2:
                assert class_reconstruction(p) == closeness_formula(p).exact

    def test_per_vertex_against_oracle(self):
        for p in odd_odd(grid(k_max=9, n_max=101)):
            if diameter_formula(p).value <= 2:
                continue
            oracle = graph_closeness(build_harary(p)).per_vertex
            for v in range(p.n):
                assert vertex_closeness_formula_odd_odd(p, classify_vertex(p, v)) == pytest.approx(oracle[v], abs=1e-12)

    def test_requires_odd_odd_and_diam_gt_2(self):
        with pytest.raises(ParameterError):
            classify_vertex(P(4, 9), 0)
        with pytest.raises(ParameterError):
            classify_vertex(P(5, 13), 0)
        with pytest.raises(ParameterError):
            vertex_closeness_formula_odd_odd(P(5, 17), ring_group(5))


class TestCirculant:
    @pytest.mark.parametrize("n,l,value", [(7, 1, 12.25), (7, 3, 21.0)])
    def test_examples(self, n, l, value):
        assert circulant_closeness_formula(n, l).value == value

    def test_equals_even_harary(self):
        assert circulant_closeness_formula(10, 2).value == closeness_formula(P(4, 10)).value
        for n in range(5, 257):
            for l in range(2, (n - 1) // 2 + 1):
                assert circulant_closeness_formula(n, l).exact == closeness_formula(P(2 * l, n)).exact

    def test_bad_l(self):
        with pytest.raises(ParameterError):
            circulant_closeness_formula(7, 4)


class TestResidual:
    @pytest.mark.parametrize(
        "k,n,value,tid",
        [
            (4, 11, 29.0, "Thm3.1-not1"),
            (4, 9, 20.75, "Rem3.2-thm3.1-diam2"),
            (4, 8, 16.5, "Rem3.2-vanishing-D0"),
            (5, 18, 79.75, "Thm3.3-generic"),
            (3, 12, 29.375, "Cor3.4-n-eq-4diam"),
            (3, 10, 21.625, "Cor3.4-generic"),
            (5, 17, 72.5, "Thm3.5"),
            (3, 5, 5.0, "Rem3.7-table"),
            (3, 15, 39.6875, "Cor3.6-t3"),
        ],
    )
    def test_anchor_cells(self, k, n, value, tid):
        res = residual_formula(P(k, n))
        assert res.trace.theorem_id == tid
        assert res.value == pytest.approx(value, abs=1e-9)
        assert residual_closeness(build_harary(P(k, n))).r_value == pytest.approx(value, abs=1e-9)

    def test_h5_13_not_covered(self):
        res = residual_formula(P(5, 13))
        assert res.coverage is Coverage.NOT_COVERED
        assert res.trace.theorem_id == "gap-oddk-oddn-diam<=2"

    def test_apex_decomposition(self):
        # C - 2 C(apex) - D_v equals both the simplified statement and the oracle
        for p in odd_odd(grid(n_max=120)):
            res = residual_formula(p)
            if res.trace.theorem_id not in ("Thm3.5", "Cor3.6-t1", "Cor3.6-t3"):
                continue
            parts = apex_removal_closeness(p)
            assert parts == res.exact
            if p.n <= 60:
                assert float(parts) == closeness_after_removal(build_harary(p), (p.n - 1) // 2)

    @given(st.integers(5, 70), st.data())
    def test_matches_oracle_when_covered(self, n, data):
        p = P(data.draw(st.integers(3, n - 1)), n)
        res = residual_formula(p)
        if res.covered:
            assert res.value == pytest.approx(residual_closeness(build_harary(p)).r_value, abs=1e-9)


# Independent statement of the dispatch table: theorem id -> predicate on (k, n, diam).
def _expected_closeness_id(p, d):
    k, n = p.k, p.n
    if k == 2:
        return "gap-k2"
    if k % 2 == 0:
        return "Thm2.1-t0" if (n - 1) % k == 0 else "Thm2.1-t"
    if n % 2 == 0:
        if d <= 2:
            return f"Thm2.2-diam{d}"
        inner = n // (k - 1) if n % (k - 1) == 1 else -(-n // (k - 1))
        par = "odd" if inner % 2 else "even"
        if k == 3:
            return f"Cor2.6-{par}-inner-diam"
        t = n % (k - 1)
        thm = "Thm2.5" if t == 0 else "Thm2.4" if t == 2 else "Thm2.3"
        return f"{thm}-{par}-inner-diam"
    return f"Thm2.7-diam{d}" if d <= 2 else "Thm2.8"


def _expected_residual_id(p, d):
    k, n = p.k, p.n
    if k == 2:
        return "gap-k2"
    if k % 2 == 0:
        if d > 2:
            return "Thm3.1-n1" if n % k == 1 else "Thm3.1-not1"
        return "Rem3.2-thm3.1-diam2" if d == 2 and n % k == 1 else "Rem3.2-vanishing-D0"
    if n % 2 == 0:
        if d <= 2:
            return "gap-oddk-evenn-diam<=2"
        if k == 3:
            return "Cor3.4-n-eq-4diam" if n == 4 * d else "Cor3.4-generic"
        return "Thm3.3-boundary" if n == (k - 1) * (2 * d - 1) + 2 else "Thm3.3-generic"
    if k == 3:
        if n in (5, 7, 9, 11):
            return "Rem3.7-table"
        if d <= 3:
            return "gap-k3-oddn-diam<=3"
        return "Cor3.6-t3" if (n - 4) % 4 == 3 else "Cor3.6-t1"
    return "gap-oddk-oddn-diam<=2" if d <= 2 else "Thm3.5"


class TestDispatch:
    def test_totality_and_exclusivity(self):
        for p in grid():
            diam = diameter_formula(p)
            d = int(diam.exact) if diam.covered else None
            c = closeness_formula(p)
            r = residual_formula(p)
            assert c.trace.theorem_id == _expected_closeness_id(p, d)
            assert r.trace.theorem_id == _expected_residual_id(p, d)
            for res in (c, r):
                assert res.covered == (res.value is not None)
                assert res.covered != res.trace.theorem_id.startswith("gap-")

    def test_default_grid_fires_every_reachable_branch(self):
        cfg = SweepConfig()
        cells = cfg.cells()
        fired = set()
        for p in cells:
            for fn in (diameter_formula, closeness_formula, residual_formula):
                fired.add(fn(p).trace.theorem_id)
        fired.update(circulant_closeness_formula(n, l).trace.theorem_id for n in range(5, 65) for l in range(1, n // 2 + 1))
        expected = {
            "Diam-evenk", "Diam-k3-evenn", "Diam-k3-oddn", "Diam-oddk-evenn", "Diam-oddk-oddn",
            "Thm2.1-t", "Thm2.1-t0", "Thm2.2-diam1", "Thm2.2-diam2",
            "Thm2.3-odd-inner-diam", "Thm2.3-even-inner-diam",
            "Thm2.4-odd-inner-diam", "Thm2.4-even-inner-diam",
            "Thm2.5-odd-inner-diam", "Thm2.5-even-inner-diam",
            "Cor2.6-odd-inner-diam", "Cor2.6-even-inner-diam",
            "Thm2.7-diam2", "Thm2.8", "Cor2.10-t", "Cor2.10-t0",
            "Thm3.1-n1", "Thm3.1-not1", "Rem3.2-thm3.1-diam2", "Rem3.2-vanishing-D0",
            "Thm3.3-boundary", "Thm3.3-generic", "Cor3.4-n-eq-4diam", "Cor3.4-generic",
            "Thm3.5", "Cor3.6-t1", "Cor3.6-t3", "Rem3.7-table",
        }
        assert expected <= fired
        covered = {i for i in fired if not i.startswith("gap-")}
        # Thm2.7-diam1 is the one covered id with an empty domain
        assert covered == expected

    def test_residue_rule_mismatch(self):
        with pytest.raises(ParameterError):
            residue_t(P(4, 9), ResidueRule.ODD_K_ODD_N)
        with pytest.raises(ParameterError):
            residue_t(P(5, 17), ResidueRule.K3_ODD)
