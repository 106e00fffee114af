import json
from dataclasses import replace
from fractions import Fraction
from math import prod

import pytest

from extroot.arith.ball import ComplexBall
from extroot.arith.convert import new_context, to_mpc, to_mpf
from extroot.arith.dyadic import Dyadic
from extroot.configuration import ExtrootConfig
from extroot.data_types import EntryStatus, IsolatedRoot, SolveMode
from extroot.errors import InputError, InstanceTooLarge, SystemFormatError, VerificationFailed
from extroot.solver.pipeline import build_grid, solve
from extroot.solver.serialization import report_from_document, report_to_document
from extroot.solver.system import SystemSpec, load_system, system_from_dict
from extroot.solver.verify import verify_report


def disc_contains(root: IsolatedRoot, z) -> bool:
    ctx = new_context(256)
    return abs(to_mpc(ctx, root.disc) - z) <= to_mpf(ctx, root.disc.radius)


def total_multiplicity(report) -> int:
    return sum(e.point.mult * sum(r.multiplicity for r in e.roots) for e in report.entries)


class TestGrid:
    def test_product_of_simple_roots(self, sqrt6_system):
        grid = build_grid(sqrt6_system)
        assert [p.index for p in grid] == [(0, 0), (0, 1), (1, 0), (1, 1)]
        assert all(p.mult == 1 for p in grid)

    def test_multiplicity_product_law(self):
        spec = SystemSpec.parse("Y", ["X1^2 - 2*X1 + 1", "X2^2 - 2"])
        grid = build_grid(spec)
        assert len(grid) == 2
        assert all(p.mult == 2 for p in grid)
        assert all(p.coords[0].disc.contains_point(Fraction(1)) for p in grid)

    def test_single_extension(self):
        spec = SystemSpec.parse("Y - X1", ["X1^3 - 2"])
        assert len(build_grid(spec)) == 3


class TestSolve:
    def test_sqrt6_system(self, sqrt6_system):
        report = solve(sqrt6_system)
        ctx = new_context(256)
        assert len(report.entries) == 4
        assert report.total_mult == 4
        for entry in report.entries:
            assert entry.status == EntryStatus.OK
            assert (entry.degree, entry.distinct) == (1, 1)
            (root,) = entry.roots
            assert root.multiplicity == 1
            x1, x2 = (to_mpc(ctx, c.disc).real for c in entry.point.coords)
            assert disc_contains(root, ctx.sign(x1) * ctx.sign(x2) * ctx.sqrt(6))
        # (sqrt 2, sqrt 3) is the last grid point
        assert disc_contains(report.entries[3].roots[0], ctx.sqrt(6))

    def test_double_root_over_double_point(self, double_root_system):
        report = solve(double_root_system)
        (entry,) = report.entries
        assert entry.point.mult == 2
        (root,) = entry.roots
        assert root.multiplicity == 2
        assert root.disc.contains_point(Fraction(1))
        assert entry.system_multiplicity(root) == 4
        assert report.total_mult == 4

    def test_leading_coefficient_vanishes_on_grid(self):
        spec = SystemSpec.parse("(X1^2 - 2)*Y^2 + Y - 1", ["X1^2 - 2"])
        report = solve(spec)
        assert len(report.entries) == 2
        for entry in report.entries:
            assert (entry.degree, entry.distinct) == (1, 1)
            assert entry.roots[0].disc.contains_point(Fraction(1))

    def test_identically_zero_and_constant_fibers(self):
        report = solve(SystemSpec.parse("(X1 - 1)*Y", ["X1 - 1"]))
        assert report.entries[0].status == EntryStatus.IDENTICALLY_ZERO
        assert report.entries[0].roots == ()
        report = solve(SystemSpec.parse("X1*Y + 1", ["X1"]))
        assert report.entries[0].status == EntryStatus.NO_ROOTS
        assert report.total_mult == 0

    def test_max_precision_mode(self, sqrt6_system):
        report = solve(sqrt6_system, SolveMode.MAX_PRECISION)
        assert report.mode == SolveMode.MAX_PRECISION
        assert report.total_mult == 4
        assert all(len(e.roots) == 1 for e in report.entries)

    def test_modes_agree(self):
        spec = SystemSpec.parse("Y^2 - X1*Y - 1", ["X1^2 - 3"])
        adaptive = solve(spec, SolveMode.ADAPTIVE)
        fixed = solve(spec, SolveMode.MAX_PRECISION)
        for a, b in zip(adaptive.entries, fixed.entries):
            assert [r.multiplicity for r in a.roots] == [r.multiplicity for r in b.roots]
            for ra in a.roots:
                assert sum(not ra.disc.is_disjoint(rb.disc) for rb in b.roots) == 1

    def test_near_collision_keeps_simple_roots(self):
        # roots 2^-300 and 2^-299: far below any fixed budget short of the separation bound
        spec = SystemSpec.parse("2^600*Y^2 - 3*2^300*Y + 2", ["X1 - 1"])
        for mode in (SolveMode.ADAPTIVE, SolveMode.MAX_PRECISION):
            (entry,) = solve(spec, mode).entries
            assert [r.multiplicity for r in entry.roots] == [1, 1]
            assert entry.roots[0].disc.contains_point(Fraction(1, 2**300))
            assert entry.roots[1].disc.contains_point(Fraction(1, 2**299))

    def test_max_precision_refuses_below_budget(self):
        spec = SystemSpec.parse("2^600*Y^2 - 3*2^300*Y + 2", ["X1 - 1"])
        with pytest.raises(InstanceTooLarge):
            solve(spec, SolveMode.MAX_PRECISION, ExtrootConfig(precision_ceiling=1024))

    def test_global_count(self):
        # generic fibers: sum of system multiplicities is deg F_1 * deg F_2 * deg_Y F
        spec = SystemSpec.parse("Y^2 - X1 - X2", ["X1^2 - X1 - 1", "X2^3 - 5"])
        report = solve(spec)
        assert report.total_mult == total_multiplicity(report) == 2 * 3 * 2

    def test_threads_do_not_change_output(self, sqrt6_system):
        single = report_to_document(solve(sqrt6_system, config=ExtrootConfig(threads=1)))
        pooled = report_to_document(solve(sqrt6_system, config=ExtrootConfig(threads=3)))
        assert json.dumps(single, sort_keys=True) == json.dumps(pooled, sort_keys=True)

    def test_diagnostics_attached(self, sqrt6_system):
        report = solve(sqrt6_system, config=ExtrootConfig(diagnostics=True))
        assert len(report.diagnostics.per_point) == 4
        assert all(p.degree == 1 for p in report.diagnostics.per_point)
        assert report.timing is None

    def test_assume_squarefree_skips_counting(self, sqrt6_system):
        report = solve(sqrt6_system, config=ExtrootConfig(assume_squarefree=True, timing=True))
        assert report.total_mult == 4
        assert "count" not in report.timing["stages"]

    def test_timing_opt_in(self, sqrt6_system):
        report = solve(sqrt6_system, config=ExtrootConfig(timing=True))
        assert {"grid", "degree", "count", "isolate"} <= set(report.timing["stages"])


class TestSystemInput:
    def test_from_dict(self):
        spec = system_from_dict({"n": 2, "F": "Y - X1*X2", "F_i": ["X1^2 - 2", "X2^2 - 3"]})
        assert spec.n == 2
        assert spec.F.deg_y == 1

    @pytest.mark.parametrize(
        "data",
        [
            {"n": 2, "F": "Y - X1*X2", "F_i": ["X1^2 - 2"]},
            {"n": 1, "F": "Y", "F_i": ["X1 - 1"], "extra": 1},
            {"n": 1, "F_i": ["X1 - 1"]},
            {"n": 1, "F": "X1", "F_i": ["X1 - 1"]},
            {"n": 1, "F": "Y", "F_i": ["3"]},
        ],
    )
    def test_malformed(self, data):
        with pytest.raises(SystemFormatError):
            system_from_dict(data)

    def test_load_errors(self, tmp_path, write_json):
        with pytest.raises(InputError):
            load_system(tmp_path / "missing.json")
        broken = tmp_path / "broken.json"
        broken.write_text("{")
        with pytest.raises(SystemFormatError):
            load_system(broken)
        with pytest.raises(SystemFormatError):
            load_system(write_json("list.json", [1, 2]))

    def test_load(self, write_json):
        spec = load_system(write_json("sys.json", {"n": 1, "F": "Y^2 - X1", "F_i": ["X1 - 4"]}))
        assert spec.F_list[0].coeffs == (-4, 1)


class TestSerialization:
    def test_round_trip(self, double_root_system):
        report = solve(double_root_system, config=ExtrootConfig(diagnostics=True))
        doc = report_to_document(report)
        assert doc["entries"][0]["roots"][0]["system_mult"] == 4
        again = report_to_document(report_from_document(json.loads(json.dumps(doc))))
        assert again == doc

    def test_system_mult_mismatch(self, sqrt6_system):
        doc = report_to_document(solve(sqrt6_system))
        doc["entries"][0]["roots"][0]["system_mult"] = 3
        with pytest.raises(SystemFormatError):
            report_from_document(doc)

    def test_wrong_schema(self):
        with pytest.raises(SystemFormatError):
            report_from_document({"schema": "other", "entries": []})

    def test_missing_field(self, sqrt6_system):
        doc = report_to_document(solve(sqrt6_system))
        del doc["entries"][1]["degree"]
        with pytest.raises(SystemFormatError):
            report_from_document(doc)


class TestVerify:
    @pytest.fixture
    def two_root_system(self) -> SystemSpec:
        return SystemSpec.parse("Y^2 - X1", ["X1 - 4"])

    def test_pass(self, sqrt6_system, double_root_system, two_root_system):
        for spec in (sqrt6_system, double_root_system, two_root_system):
            verdict = verify_report(spec, solve(spec))
            assert verdict.points == len(build_grid(spec))
            assert verdict.to_document()["verdict"] == "Pass"

    def test_pass_after_round_trip(self, sqrt6_system):
        doc = json.loads(json.dumps(report_to_document(solve(sqrt6_system, SolveMode.MAX_PRECISION))))
        assert verify_report(sqrt6_system, report_from_document(doc)).roots == 4

    def test_pass_on_degenerate_fibers(self):
        spec = SystemSpec.parse("(X1 - 1)*Y", ["X1 - 1"])
        assert verify_report(spec, solve(spec)).roots == 0

    def test_overlapping_discs(self, two_root_system):
        report = solve(two_root_system)
        entry = report.entries[0]
        first = entry.roots[0]
        report.entries[0] = replace(entry, roots=(first, IsolatedRoot(first.disc, 1)))
        with pytest.raises(VerificationFailed) as info:
            verify_report(two_root_system, report)
        assert info.value.reason == "disjointness"

    def test_decremented_multiplicity(self, double_root_system):
        report = solve(double_root_system)
        entry = report.entries[0]
        (root,) = entry.roots
        report.entries[0] = replace(entry, roots=(IsolatedRoot(root.disc, 1),))
        with pytest.raises(VerificationFailed) as info:
            verify_report(double_root_system, report)
        assert info.value.reason == "count_conservation"

    def test_misplaced_disc(self, two_root_system):
        report = solve(two_root_system)
        entry = report.entries[0]
        moved = IsolatedRoot(ComplexBall(Dyadic(5), Dyadic(0), Dyadic(1, -10)), 1)
        report.entries[0] = replace(entry, roots=(entry.roots[0], moved))
        with pytest.raises(VerificationFailed):
            verify_report(two_root_system, report)

    def test_wrong_total(self, sqrt6_system):
        report = solve(sqrt6_system)
        report.total_mult += 1
        with pytest.raises(VerificationFailed) as info:
            verify_report(sqrt6_system, report)
        assert info.value.reason == "count_conservation"


SUITE = [
    ("Y - X1*X2", ["X1^2 - 2", "X2^2 - 3"]),
    ("(Y - X1)^2", ["X1^2 - 2*X1 + 1"]),
    ("(X1^2 - 2)*Y^2 + Y - 1", ["X1^2 - 2"]),
    ("Y^2 - X1", ["X1^2 + 1"]),
    ("Y^2 + X1*Y + 1", ["X1^2 + X1 + 1"]),
    ("Y - X1 - X2", ["X1^2 + X1 + 1", "X2^2 + 2"]),
    ("Y^3 - X1", ["X1^3 - 2"]),
    ("Y^2 - X1*X2", ["X1^2 + 1", "X2^2 + 2"]),
    ("(Y - X1)*(Y + X1)", ["X1^3 - 2"]),
    ("(Y^2 + 1)*(Y - X1)", ["X1^2 + 1"]),
    ("(Y^2 - 2)*(Y - X1)", ["X1^2 - 2"]),
    ("Y^2 - X1 - X2", ["X1^2 - X1 - 1", "X2^3 - 5"]),
    ("X1*Y^2 + Y - 1", ["X1^2 - X1"]),
    ("(X1 - 1)*Y", ["X1 - 1"]),
    ("X1*Y + 1", ["X1"]),
    ("Y^2 - X1", ["X1^2"]),
    ("Y - X1 - X2 - X3", ["X1^2 - 2", "X2^2 - 3", "X3^2 - 5"]),
    ("Y^2 - X1*X2*X3", ["X1^2 - 2", "X2^2 + 1", "X3 - 3"]),
    ("(Y - 1)^3", ["X1^2 - 5"]),
    ("Y^4 - 2", ["X1^2 + X1 + 1"]),
    ("Y^2 - 2*X1*Y + X1^2 - 1", ["X1^2 - 3"]),
    ("(Y - X1)^2*(Y + 1)", ["X1^2 + 1"]),
    ("Y^5 - X1", ["X1^2 - 2"]),
    ("Y^2 - X1", ["X1^4 - 10*X1^2 + 1"]),
    ("(X1 + X2)*Y^2 + Y + 1", ["X1^2 - 2", "X2^2 - 2"]),
    ("Y^2 + X1*X2", ["X1^2 + X1 + 1", "X2^2 - X2 + 1"]),
    ("Y^3 - 3*Y + X1", ["X1^2 - 4"]),
    ("(Y - X1)*(Y - X2)", ["X1^2 - 2", "X2^2 - 2"]),
    ("Y^2 - 7", ["3*X1 - 1"]),
    ("Y^2 + Y + X1", ["X1^3 - X1 - 1"]),
]


def round_trip(report):
    return report_from_document(json.loads(json.dumps(report_to_document(report))))


@pytest.mark.slow
@pytest.mark.parametrize("F,F_i", SUITE)
def test_suite_verifies_in_both_modes(F, F_i):
    spec = SystemSpec.parse(F, F_i)
    adaptive = solve(spec, SolveMode.ADAPTIVE)
    fixed = solve(spec, SolveMode.MAX_PRECISION)
    for report in (adaptive, fixed):
        assert verify_report(spec, round_trip(report)).points == len(report.entries)
    assert adaptive.total_mult == fixed.total_mult
    assert len(adaptive.entries) == len(fixed.entries)
    for a, b in zip(adaptive.entries, fixed.entries):
        assert a.point.index == b.point.index
        assert (a.degree, a.distinct, a.status) == (b.degree, b.distinct, b.status)
        assert sorted(r.multiplicity for r in a.roots) == sorted(r.multiplicity for r in b.roots)
        for root in a.roots:
            overlapping = [other.multiplicity for other in b.roots if not root.disc.is_disjoint(other.disc)]
            assert root.multiplicity in overlapping


# (F_i, multiplicity of each of its roots); the Y-factors are (Y - S)^p (Y - S - 1)^q, S = X1 + ... + Xn
MULTIPLICITY_CASES = [
    ([("(X1 - 1)^2", 2)], 1, 1),
    ([("(X1 - 1)^2", 2)], 2, 1),
    ([("(X1 + 2)^3", 3)], 1, 2),
    ([("(X1 + 2)^3", 3)], 3, 1),
    ([("(X1^2 - 2)^2", 2)], 2, 2),
    ([("(X1^2 - 2)^2", 2)], 1, 3),
    ([("X1^2 - 3", 1)], 2, 1),
    ([("X1^2 - 3", 1)], 3, 1),
    ([("(X1^2 + 1)^2", 2)], 2, 1),
    ([("(X1^2 + 1)^2", 2)], 1, 1),
    ([("X1 - 3", 1)], 4, 0),
    ([("(X1 - 1)^2", 2), ("(X2 + 2)^3", 3)], 1, 1),
    ([("(X1 - 1)^2", 2), ("X2^2 - 3", 1)], 2, 1),
    ([("(X1^2 - 2)^2", 2), ("X2 - 3", 1)], 1, 2),
    ([("(X1^2 + 1)^2", 2), ("(X2 - 1)^2", 2)], 1, 1),
    ([("X1^2 - 3", 1), ("(X2^2 - 2)^2", 2)], 2, 2),
    ([("(X1 + 2)^3", 3), ("(X2^2 + 1)^2", 2)], 1, 1),
    ([("(X1 - 1)^2", 2), ("(X2 - 1)^2", 2)], 3, 1),
    ([("X1 - 3", 1), ("(X2 + 2)^3", 3)], 2, 0),
    ([("(X1^2 - 2)^2", 2), ("(X2^2 - 2)^2", 2)], 1, 1),
]


@pytest.mark.parametrize("axes,p,q", MULTIPLICITY_CASES)
def test_multiplicity_law(axes, p, q):
    s = " + ".join(f"X{i}" for i in range(1, len(axes) + 1))
    F = f"(Y - ({s}))^{p}" + (f"*(Y - ({s}) - 1)^{q}" if q else "")
    spec = SystemSpec.parse(F, [text for text, _ in axes])
    point_mult = prod(m for _, m in axes)
    report = solve(spec)
    assert report.entries
    for entry in report.entries:
        assert entry.point.mult == point_mult
        # the root S sorts before S + 1
        expected = [point_mult * p] + ([point_mult * q] if q else [])
        assert [entry.system_multiplicity(r) for r in entry.roots] == expected
    assert report.total_mult == len(report.entries) * point_mult * (p + q)
