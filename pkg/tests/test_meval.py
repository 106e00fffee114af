import random
from fractions import Fraction

import pytest

from extroot.arith.ball import ComplexBall, ball_sqrt_int
from extroot.arith.convert import new_context, to_mpc
from extroot.arith.dyadic import Dyadic
from extroot.errors import PrecisionDemandUnmet
from extroot.meval.evaluation import EvalGrid, coefficient_poly_eval, grid_eval, naive_eval, precision_demand
from extroot.meval.points import eval_at_point, fiber_coefficients
from extroot.meval.remainder_tree import AxisEvaluator, _Node, horner, remainder_tree_eval
from extroot.poly.parser import parse_polynomial
from extroot.solver.pipeline import build_grid
from extroot.solver.system import SystemSpec


def exact(*values) -> tuple[ComplexBall, ...]:
    return tuple(ComplexBall.exact(v) for v in values)


def random_axis(rng: random.Random, size: int) -> tuple[ComplexBall, ...]:
    return tuple(ComplexBall(Dyadic(rng.randint(-40, 40), -4), Dyadic(rng.randint(-40, 40), -4)) for _ in range(size))


class TestGridEval:
    def test_integer_lattice(self):
        f = parse_polynomial("X1*X2 + 1", 2)
        values = grid_eval(f, EvalGrid((exact(1, 2), exact(0, 1)), 10))
        expected = {(0, 0): 1, (0, 1): 2, (1, 0): 1, (1, 1): 3}
        assert set(values) == set(expected)
        for index, value in expected.items():
            assert values[index].contains_point(Fraction(value))
            assert values[index].radius < Dyadic(1, -10)

    def test_identity_on_axis(self):
        f = parse_polynomial("X1", 2)
        axis = exact(Dyadic(3, -2), -5, 7)
        values = grid_eval(f, EvalGrid((axis, exact(0, 1)), 20))
        for i, point in enumerate(axis):
            for j in range(2):
                assert values[(i, j)].contains_point(point.re_center.to_fraction())

    def test_narrow_inputs_reach_target(self):
        f = parse_polynomial("X1^2 + X2^2 - 5", 2)
        tiny = Dyadic(1, -30)
        grid = EvalGrid(((ComplexBall(Dyadic(1), Dyadic(0), tiny),), (ComplexBall(Dyadic(2), Dyadic(0), tiny),)), 20)
        value = grid_eval(f, grid)[(0, 0)]
        assert value.contains_point(Fraction(0))
        assert value.radius < Dyadic(1, -20)

    def test_wide_inputs_report_demand(self):
        f = parse_polynomial("X1^3 - 2", 1)
        grid = EvalGrid(((ComplexBall(Dyadic(5, -2), Dyadic(0), Dyadic(1, -8)),),), 40)
        with pytest.raises(PrecisionDemandUnmet) as info:
            grid_eval(f, grid)
        assert info.value.required_bits == precision_demand(f, grid)
        assert info.value.required_bits > 40

    def test_zero_polynomial(self):
        f = parse_polynomial("X1 - X1", 1)
        assert grid_eval(f, EvalGrid((exact(1, 2),), 10)) == {(0,): ComplexBall(), (1,): ComplexBall()}

    def test_empty_axis_rejected(self):
        with pytest.raises(ValueError):
            EvalGrid(((),), 10)

    def test_axis_count_mismatch(self):
        with pytest.raises(ValueError):
            grid_eval(parse_polynomial("X1*X2", 2), EvalGrid((exact(1),), 10))

    def test_axis_calls_shared_across_grid(self):
        # X1 exponents {2, 1, 0}: 3 calls on the X2 axis, then one X1 call per X2 point
        f = parse_polynomial("X1^2*X2 + 3*X1 + X2^2 + 1", 2)
        axes = (exact(-1, 0, 2, 5), exact(1, 3, -2))
        evaluator = AxisEvaluator()
        values = grid_eval(f, EvalGrid(axes, 20), evaluator)
        assert evaluator.calls == 3 + 3
        assert evaluator.calls < len(axes[0]) * len(axes[1])
        for (i, j), value in values.items():
            x1, x2 = axes[0][i].re_center.to_fraction(), axes[1][j].re_center.to_fraction()
            assert value.contains_point(x1**2 * x2 + 3 * x1 + x2**2 + 1)

    def test_agrees_with_naive_eval(self):
        rng = random.Random(19)
        for _ in range(40):
            terms = " + ".join(
                f"{rng.randint(-9, 9)}*X1^{rng.randint(0, 3)}*X2^{rng.randint(0, 3)}" for _ in range(rng.randint(1, 5))
            )
            f = parse_polynomial(terms, 2)
            axes = (random_axis(rng, 3), random_axis(rng, 3))
            values = grid_eval(f, EvalGrid(axes, 30))
            for (i, j), value in values.items():
                reference = naive_eval(f, (axes[0][i], axes[1][j]), 80)
                assert not value.is_disjoint(reference)


class TestNaiveEval:
    def test_y_only(self):
        f = parse_polynomial("Y", 1)
        assert naive_eval(f, exact(17, 3), 53).contains_point(Fraction(3))

    def test_product(self):
        f = parse_polynomial("X1*Y", 1)
        value = naive_eval(f, exact(2, 3), 53)
        assert value.contains_point(Fraction(6))
        assert value.radius <= Dyadic(1, -50)


class TestCoefficientPolyEval:
    def test_exact_point(self):
        poly = coefficient_poly_eval(parse_polynomial("Y^2 - X1", 1), exact(2), 10)
        assert poly.degree == 2
        assert poly.coeffs[0].contains_point(Fraction(-2))
        assert poly.coeffs[1] == ComplexBall()
        assert poly.coeffs[2].contains_point(Fraction(1))

    def test_vanishing_leading_coefficient(self):
        root2 = ball_sqrt_int(2, 50)
        poly = coefficient_poly_eval(parse_polynomial("(X1^2 - 2)*Y + 1", 1), (root2,), 20)
        assert poly.leading.contains_point(Fraction(0))
        assert poly.leading.radius < Dyadic(1, -20)


class TestRemainderTree:
    def test_matches_horner(self):
        rng = random.Random(2)
        coeffs = [ComplexBall(Dyadic(rng.randint(-99, 99))) for _ in range(40)]
        points = [ComplexBall(Dyadic(rng.randint(-16, 16), -4), Dyadic(rng.randint(-16, 16), -4)) for _ in range(70)]
        tree = remainder_tree_eval(coeffs, points, 200)
        for point, value in zip(points, tree):
            assert not value.is_disjoint(horner(coeffs, point, 200))

    def test_evaluator_switches_on_cutoff(self):
        coeffs = [ComplexBall(Dyadic(c)) for c in (1, 0, 1)]
        points = [ComplexBall(Dyadic(i)) for i in range(5)]
        small = AxisEvaluator(cutoff=32)(coeffs, points, 64)
        large = AxisEvaluator(cutoff=2)(coeffs, points, 64)
        for i, (a, b) in enumerate(zip(small, large)):
            assert a.contains_point(Fraction(i * i + 1))
            assert b.contains_point(Fraction(i * i + 1))

    def test_cutoff_reaches_inner_nodes(self):
        points = [ComplexBall(Dyadic(i)) for i in range(5)]
        assert _Node(points, 64, 32).left is None
        root = _Node(points, 64, 2)
        assert root.left is not None
        # 5 -> (2, 3) -> the 3-point half splits again
        assert len(root.left.points) == 2 and root.left.left is not None
        assert root.right.right.left is not None
        coeffs = [ComplexBall(Dyadic(c)) for c in (7, -3, 0, 2)]
        for i, value in enumerate(remainder_tree_eval(coeffs, points, 64, cutoff=2)):
            assert value.contains_point(Fraction(7 - 3 * i + 2 * i**3))

    def test_cutoff_below_two_rejected(self):
        with pytest.raises(ValueError):
            AxisEvaluator(cutoff=1)


class TestAlgebraicPoints:
    def test_eval_at_point_refines_coordinates(self):
        spec = SystemSpec.parse("Y - X1*X2", ["X1^2 - 2", "X2^2 - 3"])
        ctx = new_context(256)
        for point in build_grid(spec):
            value = eval_at_point(parse_polynomial("X1*X2", 2), point, 120)
            assert value.radius < Dyadic(1, -120)
            assert abs(abs(to_mpc(ctx, value)) - ctx.sqrt(6)) < ctx.ldexp(1, -100)

    def test_fiber_coefficients(self):
        spec = SystemSpec.parse("X1*Y^2 + X2", ["X1^2 - 2", "X2^2 - 3"])
        ctx = new_context(256)
        for point in build_grid(spec):
            fiber = fiber_coefficients(spec.F, point, 90)
            assert fiber.degree == 2
            assert all(c.radius < Dyadic(1, -90) for c in fiber.coeffs)
            assert abs(abs(to_mpc(ctx, fiber.coeffs[2])) - ctx.sqrt(2)) < ctx.ldexp(1, -85)
            assert abs(abs(to_mpc(ctx, fiber.coeffs[0])) - ctx.sqrt(3)) < ctx.ldexp(1, -85)
            assert fiber.coeffs[1] == ComplexBall()
