import csv
import io
import json
from fractions import Fraction

import pytest

from srpmaass import checks
from srpmaass.cli import emit_table, main


def run(capsys, *argv):
    try:
        code = main(list(argv))
    except SystemExit as exc:  # argparse usage errors
        code = exc.code
    out, err = capsys.readouterr()
    return code, out, err


class TestTables:
    def rows(self, text):
        return {int(r["n"]): (int(r["numerator"]), int(r["denominator"])) for r in csv.DictReader(io.StringIO(text))}

    def test_known_rows(self):
        assert self.rows(emit_table("s_k", 1, 10))[3] == (11, 6)
        assert self.rows(emit_table("g_k", 2, 5))[2] == (-7, 4)
        assert self.rows(emit_table("twisted", 3, 3))[2] == (-1, 2)

    def test_json_table(self, tmp_path, capsys):
        out = tmp_path / "srp3.json"
        code, _, _ = run(capsys, "table", "--kind", "srp3", "--order", "3", "--format", "json", "--out", str(out))
        assert code == 0
        assert json.loads(out.read_text()) == ["0/1", "1/1", "1/8", "251/216"]

    def test_tables_are_reproducible(self):
        assert emit_table("s_k", 3, 20) == emit_table("s_k", 3, 20)

    def test_bad_table_parameters(self, capsys):
        assert run(capsys, "table", "--kind", "twisted", "--param", "9", "--order", "5")[0] == 2
        assert run(capsys, "table", "--kind", "g_k", "--order", "5")[0] == 2

    def test_unwritable_table(self, capsys, tmp_path):
        target = tmp_path / "missing" / "t.csv"
        assert run(capsys, "table", "--kind", "g_k", "--param", "1", "--order", "3", "--out", str(target))[0] == 1


class TestRun:
    def test_exact_suite_json(self, capsys):
        code, out, err = run(capsys, "run", "--suite", "exact")
        doc = json.loads(out)
        assert code == 0
        assert set(doc) == {"suite", "context", "checks", "summary"}
        assert set(doc["context"]) == {"prec", "order", "cutoff", "step"}
        assert doc["summary"]["fail"] == 0 and doc["summary"]["pass"] == len(doc["checks"])
        ids = [c["check_id"] for c in doc["checks"]]
        assert ids == sorted(ids)
        assert all(c["exact"] or c["tolerance"] is not None for c in doc["checks"])
        assert "[PASS]" in err

    def test_csv_report_to_file(self, capsys, tmp_path):
        out = tmp_path / "r.csv"
        code, _, _ = run(capsys, "run", "--suite", "twisted", "--format", "csv", "--out", str(out))
        rows = list(csv.DictReader(io.StringIO(out.read_text())))
        assert code == 0 and {r["check_id"] for r in rows} == {"twisted.oracle", "twisted.closed_forms"}

    def test_unknown_suite(self, capsys):
        code, _, err = run(capsys, "run", "--suite", "unknown")
        assert code == 2 and "unknown suite" in err

    def test_invalid_overrides(self, capsys, tmp_path):
        assert run(capsys, "run", "--suite", "exact", "--prec", "16")[0] == 2
        assert run(capsys, "run", "--suite", "exact", "--prec", "lots")[0] == 2
        assert run(capsys, "run", "--suite", "exact", "--points", str(tmp_path / "nope.json"))[0] == 2
        assert run(capsys, "run", "--suite", "exact", "--format", "xml")[0] == 2

    def test_environment_overrides(self, capsys, monkeypatch):
        monkeypatch.setenv("SRPMAASS_PREC", "96")
        monkeypatch.setenv("SRPMAASS_SUITE", "example")
        code, out, _ = run(capsys, "run")
        doc = json.loads(out)
        assert code == 0 and doc["suite"] == "example" and doc["context"]["prec"] == 96
        # explicit flags win over the environment
        code, out, _ = run(capsys, "run", "--prec", "128")
        assert json.loads(out)["context"]["prec"] == 128

    def test_points_file(self, capsys, tmp_path):
        pts = tmp_path / "pts.json"
        pts.write_text(json.dumps(["0.1+0.9i", [0.25, 1.5]]))
        code, out, _ = run(capsys, "run", "--suite", "limit", "--points", str(pts))
        doc = json.loads(out)
        assert code == 0
        kron = next(c for c in doc["checks"] if c["check_id"] == "limit.kronecker")
        assert kron["points"] == ["0.1+0.9i", "0.25+1.5i"]

    def test_failure_exit_code(self, capsys):
        # a pinned series order too small for the default points makes checks fail
        code, out, _ = run(capsys, "run", "--suite", "modularity", "--order", "4")
        doc = json.loads(out)
        assert code == 1 and doc["summary"]["fail"] > 0
        failed = [c for c in doc["checks"] if c["status"] == "fail"]
        assert all("InsufficientTruncation" in c["detail"]["error"] for c in failed)

    def test_slow_flag(self, capsys):
        code, out, _ = run(capsys, "run", "--suite", "limit")
        direct = next(c for c in json.loads(out)["checks"] if c["check_id"] == "limit.direct")
        assert direct["status"] == "skipped"
        code, out, _ = run(capsys, "run", "--suite", "limit", "--slow")
        direct = next(c for c in json.loads(out)["checks"] if c["check_id"] == "limit.direct")
        assert code == 0 and direct["status"] == "pass"


class TestRegistry:
    def test_suites_cover_registry(self):
        ids = set(checks.REGISTRY)
        per_suite = set()
        for name in checks.SUITE_NAMES[:-1]:
            per_suite |= set(checks.manifest(name).check_ids)
        assert per_suite == ids == set(checks.manifest("all").check_ids)

    def test_manifest_rejects_unregistered(self):
        with pytest.raises(KeyError):
            checks.SuiteManifest("bogus", ("exact.nonexistent",))

    def test_unknown_suite_raises(self):
        with pytest.raises(checks.UnknownSuite):
            checks.run_suite("unknown")

    def test_manifest_points(self):
        vs = [p.v for p in checks.DEFAULT_POINTS]
        assert len(vs) == 6 and min(vs) == Fraction(2, 5) and max(vs) == 2

    def test_reports_reproducible(self):
        a = checks.run_suite("example")
        b = checks.run_suite("example")
        assert [(r.check_id, r.status, f"{r.max_deviation:.3e}" if r.max_deviation else None) for r in a] == \
               [(r.check_id, r.status, f"{r.max_deviation:.3e}" if r.max_deviation else None) for r in b]

    def test_status_matches_deviation(self):
        for r in checks.run_suite("limit"):
            if r.status != "skipped" and not r.exact:
                assert (r.status == "pass") == (r.max_deviation < r.tolerance)

    def test_status_rule_is_strict(self, monkeypatch):
        from srpmaass.special import PrecisionContext

        monkeypatch.setitem(checks.REGISTRY, "exact.tmp_equal", checks.Check(
            "exact.tmp_equal", "exact", "deviation equal to tolerance",
            lambda ctx, pts: checks.Outcome(deviation=1e-9, tolerance=1e-9)))
        monkeypatch.setitem(checks.REGISTRY, "exact.tmp_mismatch", checks.Check(
            "exact.tmp_mismatch", "exact", "one rational mismatch",
            lambda ctx, pts: checks._exact_outcome([(0, Fraction(1, 2), Fraction(1, 3))])))
        ctx = PrecisionContext()
        assert checks.run_check("exact.tmp_equal", ctx, ()).status == "fail"
        bad = checks.run_check("exact.tmp_mismatch", ctx, ())
        assert bad.status == "fail" and bad.mismatches == 1 and "[FAIL]" in bad.line()
