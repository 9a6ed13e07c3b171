import unittest

import numpy as np

from singquartic.ff2k import FieldElement, field_new
from singquartic.mpoly import (
    HomogeneityError,
    MultiPoly,
    NotSingularError,
    ParseError,
    elementary_symmetric,
    format_poly,
    parse,
    parse_element,
    random_form,
    singular_at,
    taylor_at_singular_point,
    univariate_gcd,
    univariate_roots,
)


def _random_invertible(ctx, rng):
    while True:
        matrix = [[int(v) for v in rng.integers(0, ctx.q, size=4)] for _ in range(4)]
        try:
            ctx.mat_inv(matrix)
            return matrix
        except ValueError:
            continue


class ParseTests(unittest.TestCase):
    def setUp(self):
        self.ctx = field_new(4)

    def test_terms_and_coefficients(self):
        p = parse("x1^2*x2 + u*x3^3 + 2*x4^3 + 3*x1*x2*x3", self.ctx)
        self.assertEqual(p.terms[(2, 1, 0, 0)], 1)
        self.assertEqual(p.terms[(0, 0, 3, 0)], self.ctx.gen)
        self.assertNotIn((0, 0, 0, 3), p.terms)
        self.assertEqual(p.terms[(1, 1, 1, 0)], 1)
        self.assertTrue(p.is_homogeneous())
        self.assertEqual(p.degree, 3)

    def test_cancellation_mod_two(self):
        p = parse("(x1 + x2)^2 + x1^2", self.ctx)
        self.assertEqual(p, parse("x2^2", self.ctx))

    def test_omega(self):
        p = parse("omega*x1 + omega^2*x2", self.ctx)
        w = self.ctx.omega
        self.assertEqual(p.terms[(1, 0, 0, 0)], w)
        self.assertEqual(p.terms[(0, 1, 0, 0)], self.ctx.square(w))
        with self.assertRaises(ParseError):
            parse("omega*x1", field_new(3))

    def test_aliases(self):
        self.assertEqual(parse("w^4 + z^2*x1^2", self.ctx), parse("x4^4 + x4^2*x1^2", self.ctx))

    def test_error_positions(self):
        cases = [
            ("x1 + + x2", 5),
            ("x1 + x5", 5),
            ("x1^x2", 3),
            ("x1 $ x2", 3),
        ]
        for text, position in cases:
            with self.assertRaises(ParseError) as cm:
                parse(text, self.ctx)
            self.assertEqual(cm.exception.position, position, text)
        with self.assertRaises(ParseError):
            parse("(x1 + x2", self.ctx)
        with self.assertRaises(ParseError):
            parse("x1 + x2)", self.ctx)
        with self.assertRaises(ParseError):
            parse("", self.ctx)

    def test_arity(self):
        with self.assertRaises(ParseError) as cm:
            parse("x1*x4", self.ctx, nvars=3)
        self.assertEqual(cm.exception.position, 3)

    def test_homogeneity(self):
        with self.assertRaises(HomogeneityError):
            parse("x1^2 + x2", self.ctx, homogeneous=True)
        with self.assertRaises(HomogeneityError):
            parse("x1^2 + x2^2", self.ctx, degree=4)

    def test_printed_form_parses_back(self):
        p = parse("u*x1^3*x2 + (u^2+1)*x3^4 + x2*x3*x4^2", self.ctx)
        self.assertEqual(parse(format_poly(p), self.ctx), p)

    def test_element(self):
        self.assertEqual(parse_element("u^2 + 1", self.ctx).value, 0b101)
        self.assertEqual(parse_element("1", self.ctx).value, 1)


class CalculusTests(unittest.TestCase):
    def setUp(self):
        self.ctx = field_new(4)
        self.rng = np.random.default_rng(11)

    def test_partials_in_characteristic_two(self):
        p = parse("x1^3 + x1^2*x2 + x1*x2*x3", self.ctx)
        self.assertEqual(p.partial(0), parse("x1^2 + x2*x3", self.ctx))
        self.assertEqual(p.partial(1), parse("x1^2 + x1*x3", self.ctx))
        self.assertTrue(parse("x1^2 + x2^4", self.ctx).partial(0).is_zero())

    def test_euler_identity(self):
        for _ in range(500):
            F = random_form(self.ctx, 4, 4, self.rng, density=0.5)
            self.assertTrue(F.euler_residual().is_zero())
        for degree in (1, 3, 3, 5):
            G = random_form(self.ctx, 4, degree, self.rng)
            self.assertEqual(G.euler_residual(), G)
        G = parse("x1^3 + x1*x2*x3 + x4^3", self.ctx)
        self.assertEqual(G.euler_residual(), G)
        self.assertTrue(parse("x1^2", self.ctx).euler_residual().is_zero())

    def test_evaluate_many_matches_scalar(self):
        F = random_form(self.ctx, 4, 4, self.rng)
        cols = [self.rng.integers(0, self.ctx.q, size=50) for _ in range(4)]
        values = F.evaluate_many(cols)
        for i in range(50):
            point = [int(c[i]) for c in cols]
            self.assertEqual(int(values[i]), F.evaluate(point).value)

    def test_substitution_composes(self):
        F = random_form(self.ctx, 4, 4, self.rng, density=0.4)
        M = _random_invertible(self.ctx, self.rng)
        N = _random_invertible(self.ctx, self.rng)
        MN = self.ctx.mat_mul(M, N)
        self.assertEqual(F.linear_substitute(MN), F.linear_substitute(M).linear_substitute(N))

    def test_substitution_evaluates_at_image(self):
        F = random_form(self.ctx, 4, 4, self.rng)
        M = _random_invertible(self.ctx, self.rng)
        y = [int(v) for v in self.rng.integers(0, self.ctx.q, size=4)]
        self.assertEqual(F.linear_substitute(M).evaluate(y), F.evaluate(self.ctx.mat_vec(M, y)))

    def test_singular_substitution_rejected(self):
        F = random_form(self.ctx, 4, 2, self.rng)
        with self.assertRaises(ValueError):
            F.linear_substitute([[1, 0, 0, 0]] * 4)

    def test_slices(self):
        F = parse("x4^3*x1 + x4*x2^3 + x1^4", self.ctx)
        self.assertEqual(F.coefficient_of(3, 3), parse("x1", self.ctx))
        self.assertEqual(F.coefficient_of(3, 0), parse("x1^4", self.ctx))
        g = F.specialize({0: 1, 1: 0, 2: 0})
        self.assertEqual(g.univariate(3), [1, 0, 0, 1])

    def test_elementary_symmetric(self):
        s2 = elementary_symmetric(2, self.ctx)
        self.assertEqual(len(s2.terms), 6)
        self.assertEqual(elementary_symmetric(4, self.ctx), parse("x1*x2*x3*x4", self.ctx))


class UnivariateTests(unittest.TestCase):
    def setUp(self):
        self.ctx = field_new(6)

    def _el(self, v):
        return FieldElement(v, self.ctx)

    def test_roots_of_split_product(self):
        roots = [3, 17, 40, 41]
        poly = MultiPoly.constant(self.ctx, 1, 1)
        for r in roots:
            poly = poly * (MultiPoly.variable(self.ctx, 1, 0) + MultiPoly.constant(self.ctx, 1, r))
        coeffs = [self._el(c) for c in poly.univariate(0)]
        self.assertEqual(univariate_roots(coeffs), {self._el(r) for r in roots})

    def test_subfield_filter(self):
        w = self.ctx.omega
        g = self.ctx.gen
        # (x + omega)(x + u)
        coeffs = [self._el(self.ctx.mul(w, g)), self._el(w ^ g), self._el(1)]
        self.assertEqual(univariate_roots(coeffs, subfield=2), {self._el(w)})
        self.assertEqual(univariate_roots(coeffs), {self._el(w), self._el(g)})

    def test_irreducible_has_no_roots(self):
        # x^2 + x + c with trace(c) = 1
        c = next(v for v in range(1, self.ctx.q) if self.ctx.trace(v))
        self.assertEqual(univariate_roots([self._el(c), self._el(1), self._el(1)]), set())

    def test_gcd(self):
        a = [self._el(v) for v in (2, 3, 1)]       # (x + 1)(x + 2)
        b = [self._el(v) for v in (3, 2, 1)]       # (x + 1)(x + 3)
        self.assertEqual(univariate_gcd(a, b), [self._el(1), self._el(1)])


class TaylorTests(unittest.TestCase):
    def setUp(self):
        self.ctx = field_new(4)

    def test_step4_shape(self):
        F = parse("x4^2*(x1*x2 + x3^2) + x1^4 + x2^4 + x1*x2*x3^2", self.ctx)
        t = taylor_at_singular_point(F, (0, 0, 0, 1))
        self.assertEqual(t.q, parse("x1*x2 + x3^2", self.ctx, nvars=3))
        self.assertTrue(t.g.is_zero())
        self.assertEqual(t.multiplicity, 2)

    def test_reassemble(self):
        F = parse("x1*x2*x3*x4 + x1*x2*x3^2 + x4*(x1^3 + x2^3)", self.ctx)
        P = (0, 0, 0, 1)
        self.assertTrue(singular_at(F, P))
        t = taylor_at_singular_point(F, P)
        self.assertEqual(t.multiplicity, 3)
        self.assertEqual(t.reassemble(), F.linear_substitute(t.transform))

    def test_moved_point(self):
        F = parse("x4^2*x1*x2 + x1^4 + x2^4 + x3^4", self.ctx)
        G = F.linear_substitute([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 1], [0, 0, 0, 1]])
        t = taylor_at_singular_point(G, (0, 0, 1, 1))
        self.assertEqual(t.multiplicity, 2)

    def test_not_singular(self):
        F = parse("x1^4 + x2^4 + x3^4 + x4^4 + x1*x2*x3*x4", self.ctx)
        with self.assertRaises(NotSingularError):
            taylor_at_singular_point(F, (0, 0, 0, 1))


if __name__ == "__main__":
    unittest.main()
