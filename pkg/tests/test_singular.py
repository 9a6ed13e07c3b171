import os
import unittest
from unittest import mock

import numpy as np

from singquartic.constants import BIPLANAR, INCONCLUSIVE, NODE, NON_NORMAL, PROBABLY_NORMAL, UNIPLANAR
from singquartic.families import cayley_cubic, d4, f16_instance, klein, klein_critical_points, pencil
from singquartic.ff2k import field_new
from singquartic.geometry import ProjPoint, apply_matrix, sort_points
from singquartic.mpoly import NotSingularError, parse, random_form
from singquartic.singular import (
    NonIsolatedSingularities,
    analyze,
    brute_force_oracle,
    classify_point,
    common_zeros_plane,
    critical_points_plane,
    degree_formula_report,
    gauss_plane_test,
    is_inseparable_projection,
    local_multiplicity,
    monoid_bound,
    normality_heuristic,
    singular_points,
)

SLOW = os.environ.get("SINGQUARTIC_SLOW") == "1"

SMOOTH = "x1^3*x2 + x2^3*x3 + x3^3*x4 + x4^3*x1 + x1^2*x3^2"
SINGULAR_LINE = "x4^2*x1*x2 + x1^4 + x2^4 + x3^4"


def _random_invertible(ctx, rng):
    while True:
        matrix = [[int(v) for v in rng.integers(0, ctx.q, size=4)] for _ in range(4)]
        try:
            return matrix, ctx.mat_inv(matrix)
        except ValueError:
            continue


class EnumerationTests(unittest.TestCase):
    def setUp(self):
        self.ctx = field_new(4)

    def test_cayley_cubic(self):
        found = singular_points(cayley_cubic(self.ctx), threads=1)
        self.assertEqual(found, [ProjPoint(v, self.ctx) for v in
                                 [(0, 0, 0, 1), (0, 0, 1, 0), (0, 1, 0, 0), (1, 0, 0, 0)]])
        self.assertLessEqual(len(found), monoid_bound(3))

    def test_smooth_quartic(self):
        self.assertEqual(singular_points(parse(SMOOTH, self.ctx), threads=2), [])

    def test_sum_of_fourth_powers_plus_s4(self):
        F = parse("x1^4 + x2^4 + x3^4 + x4^4 + x1*x2*x3*x4", self.ctx)
        found = singular_points(F, threads=1)
        self.assertEqual(len(found), 6)
        self.assertIn(ProjPoint((0, 0, 1, 1), self.ctx), found)

    def test_matches_oracle_on_families(self):
        surfaces = [
            cayley_cubic(self.ctx),
            pencil(1, self.ctx)[0],
            pencil(self.ctx.omega, self.ctx)[0],
            d4(1, self.ctx)[0],
            f16_instance(self.ctx)[0],
            parse(SMOOTH, self.ctx),
        ]
        for F in surfaces:
            for k in (1, 2):
                self.assertEqual(singular_points(F, subfield=k, threads=1), brute_force_oracle(F, k))

    def test_matches_oracle_on_random_quartics(self):
        rng = np.random.default_rng(3)
        checked = 0
        for _ in range(30):
            F = random_form(self.ctx, 4, 4, rng, density=0.3)
            if F.is_zero():
                continue
            try:
                found = singular_points(F, subfield=2, threads=1)
            except NonIsolatedSingularities:
                continue
            self.assertEqual(found, brute_force_oracle(F, 2))
            checked += 1
        self.assertGreater(checked, 10)

    def test_full_field_oracle(self):
        F, _ = f16_instance(self.ctx)
        found = singular_points(F, threads=2)
        self.assertEqual(len(found), 14)
        self.assertEqual(found, brute_force_oracle(F, 4))

    def test_coordinate_change(self):
        rng = np.random.default_rng(9)
        F, _ = pencil(1, self.ctx)
        before = singular_points(F, threads=1)
        for _ in range(3):
            M, M_inv = _random_invertible(self.ctx, rng)
            moved = singular_points(F.linear_substitute(M), threads=1)
            self.assertEqual(moved, sort_points(apply_matrix(M_inv, p) for p in before))

    def test_threads_do_not_change_the_result(self):
        F, _ = f16_instance(self.ctx)
        self.assertEqual(singular_points(F, threads=1), singular_points(F, threads=4))

    def test_gradient_zero(self):
        F = parse("x1^4 + x2^4 + x3^4 + x4^4", self.ctx)
        with self.assertRaises(NonIsolatedSingularities) as cm:
            singular_points(F)
        self.assertTrue(cm.exception.gradient_zero)

    def test_limit(self):
        F = parse(SINGULAR_LINE, self.ctx)
        with self.assertRaises(NonIsolatedSingularities) as cm:
            singular_points(F, limit=16, threads=1)
        self.assertGreater(len(cm.exception.points), 0)
        self.assertFalse(cm.exception.gradient_zero)
        # the line x4 = 0, x1 + x2 + x3 = 0 plus (0:0:0:1)
        self.assertEqual(len(singular_points(F, subfield=1, threads=1)), 4)

    def test_rejects_bad_input(self):
        with self.assertRaises(ValueError):
            singular_points(parse("x1^5 + x2^5", self.ctx))
        with self.assertRaises(ValueError):
            singular_points(parse("x1^2 + x2", self.ctx))
        with self.assertRaises(ValueError):
            singular_points(pencil(1, self.ctx)[0], subfield=3)
        with self.assertRaises(ValueError):
            brute_force_oracle(cayley_cubic(self.ctx), 5)


class PlaneCurveTests(unittest.TestCase):
    def test_klein_critical_points(self):
        for m in (4, 6):
            ctx = field_new(m)
            found = critical_points_plane(klein(ctx), threads=2)
            self.assertEqual(found, klein_critical_points(ctx))
        self.assertEqual(len(klein_critical_points(field_new(6))), 7)

    @unittest.skipUnless(SLOW, "set SINGQUARTIC_SLOW=1 for GF(2^12) scans")
    def test_klein_default_field(self):
        ctx = field_new(12)
        found = critical_points_plane(klein(ctx))
        self.assertEqual(len(found), 7)
        self.assertEqual(found, klein_critical_points(ctx))

    def test_square_has_no_finite_critical_locus(self):
        ctx = field_new(4)
        with self.assertRaises(NonIsolatedSingularities) as cm:
            critical_points_plane(parse("x1^2*x2^2 + x3^4", ctx, nvars=3))
        self.assertTrue(cm.exception.gradient_zero)

    def test_common_zeros(self):
        ctx = field_new(4)
        x1, x2 = parse("x1", ctx, nvars=3), parse("x2", ctx, nvars=3)
        self.assertEqual(common_zeros_plane([x1, x2]), [ProjPoint((0, 0, 1), ctx)])
        self.assertEqual(len(common_zeros_plane([x1 * x2], subfield=1)), 5)
        with self.assertRaises(ValueError):
            common_zeros_plane([])


class LocalInvariantTests(unittest.TestCase):
    def setUp(self):
        self.ctx = field_new(4)
        self.e4 = ProjPoint((0, 0, 0, 1), self.ctx)

    def test_node(self):
        F = cayley_cubic(self.ctx)
        lm = local_multiplicity(F, self.e4)
        self.assertEqual(lm.value, 2)
        self.assertFalse(lm.inconclusive)
        record = classify_point(F, self.e4)
        self.assertEqual(record.mult, 2)
        self.assertEqual(record.cone, NODE)

    def test_uniplanar(self):
        F, _ = d4(1, self.ctx)
        record = classify_point(F, self.e4)
        self.assertEqual(record.cone, UNIPLANAR)
        self.assertGreaterEqual(record.local_int_mult, 8)

    def test_biplanar(self):
        F = parse(SINGULAR_LINE, self.ctx)
        record = classify_point(F, self.e4)
        self.assertEqual(record.cone, BIPLANAR)
        self.assertGreaterEqual(record.local_int_mult, 3)

    def test_seed_independent_for_node(self):
        F = cayley_cubic(self.ctx)
        values = {local_multiplicity(F, self.e4, seed=s).value for s in range(5)}
        self.assertEqual(values, {2})

    def test_seed_independent_for_uniplanar_and_f16_points(self):
        for (F, expectation), value in ((d4(1, self.ctx), 8), (f16_instance(self.ctx), 2)):
            for point in expectation.points:
                values = {local_multiplicity(F, point, seed=s).value for s in range(4)}
                self.assertEqual(values, {value}, str(point))

    def test_not_singular(self):
        F = parse(SMOOTH, self.ctx)
        with self.assertRaises(NotSingularError):
            local_multiplicity(F, self.e4)

    def test_inseparable_projection(self):
        F, _ = f16_instance(self.ctx)
        self.assertTrue(is_inseparable_projection(F, self.e4))
        G, _ = pencil(1, self.ctx)
        self.assertFalse(is_inseparable_projection(G, self.e4))


class GlobalInvariantTests(unittest.TestCase):
    def setUp(self):
        self.ctx = field_new(4)

    def test_gauss_plane(self):
        result = gauss_plane_test(f16_instance(self.ctx)[0])
        self.assertTrue(result.flag)
        self.assertEqual(result.witness, ProjPoint((0, 0, 0, 1), self.ctx))
        # sum of the partials of s3 vanishes
        result = gauss_plane_test(cayley_cubic(self.ctx))
        self.assertEqual(result.witness, ProjPoint((1, 1, 1, 1), self.ctx))
        result = gauss_plane_test(parse(SMOOTH, self.ctx))
        self.assertFalse(result.flag)
        self.assertIsNone(result.witness)

    def test_degree_formula(self):
        F = parse(SMOOTH, self.ctx)
        report = degree_formula_report(F, [])
        self.assertEqual(report.residual, 36)
        self.assertTrue(report.consistent)

        F, _ = pencil(1, self.ctx)
        report = analyze(F, threads=2, with_normality=False)
        self.assertEqual(report.total, 10)
        self.assertEqual({r.cone for r in report.records}, {NODE})
        self.assertEqual(report.degree_residual, 16)

    def test_cayley_report(self):
        report = analyze(cayley_cubic(self.ctx), threads=2)
        self.assertEqual(report.total, 4)
        self.assertEqual(report.degree_residual, 4)
        self.assertEqual(report.by_defdeg, {1: 4})
        self.assertEqual(report.normality.flag, PROBABLY_NORMAL)
        payload = report.to_json()
        self.assertEqual(payload["total"], 4)
        self.assertEqual(payload["by_defdeg"], {"1": 4})
        self.assertEqual(list(report.to_frame()["cone"]), [NODE] * 4)

    def test_normality(self):
        flat = parse("x1^4 + x2^4 + x3^4 + x4^4", self.ctx)
        self.assertEqual(normality_heuristic(flat).flag, NON_NORMAL)
        line = parse(SINGULAR_LINE, self.ctx)
        self.assertEqual(normality_heuristic(line, threads=1).flag, NON_NORMAL)
        self.assertEqual(normality_heuristic(parse(SMOOTH, self.ctx)).flag, PROBABLY_NORMAL)
        # 4, 8, 14 points along GF(2) < GF(4) < GF(16)
        result = normality_heuristic(f16_instance(self.ctx)[0])
        self.assertEqual(result.flag, INCONCLUSIVE)
        self.assertEqual(result.counts, {1: 4, 2: 8, 4: 14})

    def test_analyze_reuses_full_field_count(self):
        F, _ = f16_instance(self.ctx)
        with mock.patch("singquartic.singular.singular_points", wraps=singular_points) as scan:
            report = analyze(F, threads=1)
        subfields = [c.kwargs.get("subfield") for c in scan.call_args_list]
        self.assertEqual(subfields.count(None), 1)
        self.assertNotIn(4, subfields)
        self.assertEqual(report.normality.counts, {1: 4, 2: 8, 4: 14})
        self.assertEqual(report.normality.flag, INCONCLUSIVE)

    def test_known_counts_over_the_bound(self):
        F, _ = f16_instance(self.ctx)
        result = normality_heuristic(F, chain=[4], known={4: 17})
        self.assertEqual(result.flag, NON_NORMAL)

    def test_analyze_non_isolated(self):
        report = analyze(parse(SINGULAR_LINE, self.ctx), threads=1)
        self.assertEqual(report.normality.flag, NON_NORMAL)
        self.assertEqual(report.records, [])
        self.assertIsNone(report.degree_residual)

    @unittest.skipUnless(SLOW, "set SINGQUARTIC_SLOW=1 for GF(2^12) scans")
    def test_f16_default_field(self):
        ctx = field_new(12)
        F, expectation = f16_instance(ctx)
        found = singular_points(F)
        self.assertEqual(len(found), 14)
        self.assertTrue(expectation.compare(found).ok)
        self.assertEqual(normality_heuristic(F).flag, PROBABLY_NORMAL)


if __name__ == "__main__":
    unittest.main()
