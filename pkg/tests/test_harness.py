import csv
import json

import pytest

from beliefpairs import ael, dl
from beliefpairs.cli import run_cli
from beliefpairs.errors import VocabularyTooLarge
from beliefpairs.harness import theorems
from beliefpairs.harness.generate import (
    GenConfig,
    atom_names,
    gen_default_theory,
    gen_modal_theory,
    gen_program,
)
from beliefpairs.harness.theorems import THEOREM_IDS, reproduce, verify
from beliefpairs.lattice import BeliefPair, WorldSet
from beliefpairs.syntax import (
    Atom,
    FalseConst,
    TrueConst,
    is_objective,
    parse_default_theory,
    walk,
)

PQP_TEXT = "D:\np : q / p.\n"


class TestGenerators:
    def test_deterministic(self):
        cfg = GenConfig(seed=1, n=2, size=2)
        assert gen_modal_theory(cfg, 3) == gen_modal_theory(cfg, 3)
        assert gen_default_theory(cfg, 3) == gen_default_theory(cfg, 3)
        assert gen_program(cfg, 3) == gen_program(cfg, 3)

    def test_seed_changes_output(self):
        outs = {gen_modal_theory(GenConfig(seed=s), 0) for s in range(20)}
        assert len(outs) > 10

    def test_depth_zero_gives_leaves(self):
        cfg = GenConfig(seed=5, depth=0, size=5)
        for k in range(20):
            for f in gen_modal_theory(cfg, k):
                assert isinstance(f, (Atom, TrueConst, FalseConst))

    def test_defaults_are_objective(self):
        for k in range(30):
            d = gen_default_theory(GenConfig(seed=2, depth=3), k)
            assert all(is_objective(f) for f in d.facts)
            assert all(is_objective(f) for dd in d.defaults for f in dd.formulas())

    def test_sizes_respect_config(self):
        cfg = GenConfig(seed=3, n=3, size=2, defaults=3, clauses=4)
        for k in range(30):
            assert 1 <= len(gen_modal_theory(cfg, k)) <= 2
            assert 1 <= len(gen_default_theory(cfg, k).defaults) <= 3
            assert 1 <= len(gen_program(cfg, k).clauses) <= 4

    def test_atoms_from_vocabulary(self):
        cfg = GenConfig(seed=0, n=2, depth=3)
        for k in range(20):
            names = {f.name for g in gen_modal_theory(cfg, k) for f in walk(g) if isinstance(f, Atom)}
            assert names <= set(atom_names(2))

    def test_invalid_config(self):
        with pytest.raises(ValueError):
            GenConfig(n=-1)
        with pytest.raises(ValueError):
            GenConfig(size=0)


class TestVerify:
    def test_traceability(self):
        assert THEOREM_IDS == [f"T{k}" for k in range(1, 16)]

    def test_t1_passes(self):
        rep = verify("T1", GenConfig(n=2, samples=50))
        assert rep.passed and rep.checked == 50 and rep.failures == []

    def test_t14_on_worked_example(self):
        delta = parse_default_theory(PQP_TEXT)
        rep = verify("T14", GenConfig(n=2, samples=0), instances=[delta])
        assert rep.passed and rep.checked == 1

    def test_t9_on_worked_example(self):
        delta = parse_default_theory(PQP_TEXT)
        v = GenConfig(n=2).vocab
        assert dl.reiter_extensions(delta, v) == dl.reiter_oracle(delta, v) == [WorldSet.all(v)]
        assert verify("T9", GenConfig(n=2, samples=0), instances=[delta]).passed

    def test_unknown_id(self):
        with pytest.raises(ValueError, match="unknown theorem"):
            verify("T16", GenConfig())

    def test_cap_violation(self):
        with pytest.raises(VocabularyTooLarge):
            verify("T2", GenConfig(n=4, samples=1))

    @pytest.mark.parametrize("tid", THEOREM_IDS + list(theorems.ORACLES))
    def test_each_check_passes_small(self, tid):
        rep = verify(tid, GenConfig(seed=11, n=2, samples=10))
        assert rep.passed, "\n".join(str(f) for f in rep.failures)


class TestFailureDetection:
    """Broken operators must be caught, and reported failures must replay."""

    def test_broken_oracle_is_reported_and_reproduces(self, monkeypatch):
        monkeypatch.setattr(dl, "reiter_oracle", lambda delta, v=None: [])
        rep = verify("T9", GenConfig(seed=3, n=2, samples=5))
        assert not rep.passed and rep.checked == 5
        f = rep.failures[0]
        text = f.reproduction()
        assert "T9 seed=3" in text and "D:" in text
        assert reproduce(f)

    def test_reproduction_is_self_contained(self, monkeypatch):
        original = ael.d_approx

        def lopsided(t, b):
            out = original(t, b)
            return BeliefPair(out.p, out.p)

        monkeypatch.setattr(ael, "d_approx", lopsided)
        rep = verify("T2", GenConfig(seed=4, n=2, samples=20))
        assert not rep.passed
        for f in rep.failures:
            assert reproduce(f), f.reproduction()

    def test_wrong_moore_operator_breaks_t1(self, monkeypatch):
        monkeypatch.setattr(ael, "d_moore", lambda t, q: WorldSet.all(q.vocab))
        assert not verify("T1", GenConfig(seed=1, n=2, samples=20)).passed

    def test_passing_report_line(self):
        rep = verify("T6", GenConfig(seed=1, samples=3))
        assert rep.passed and rep.line().startswith("PASS T6")


# ----------------------------------------------------------------------------
# Command line
# ----------------------------------------------------------------------------


@pytest.fixture
def files(tmp_path):
    paths = {
        "kp": tmp_path / "kp.ael",
        "pqp": tmp_path / "pqp.dl",
        "even": tmp_path / "even.lp",
        "bad": tmp_path / "bad.ael",
    }
    paths["kp"].write_text("Kp -> p\n")
    paths["pqp"].write_text(PQP_TEXT)
    paths["even"].write_text("p :- not q.\nq :- not p.\n")
    paths["bad"].write_text("Kp -> $\n")
    return {k: str(v) for k, v in paths.items()}


def out_lines(capsys):
    return capsys.readouterr().out.strip().splitlines()


class TestCli:
    def test_expansions(self, files, capsys):
        assert run_cli(["ael", "expansions", files["kp"]]) == 0
        assert out_lines(capsys) == ["# expansions: 2", "[{p}]", "[{}, {p}]"]

    def test_extensions(self, files, capsys):
        assert run_cli(["ael", "extensions", files["kp"]]) == 0
        assert out_lines(capsys) == ["# extensions: 1", "[{}, {p}]"]

    def test_dl_extensions(self, files, capsys):
        assert run_cli(["dl", "extensions", files["pqp"]]) == 0
        assert out_lines(capsys)[1:] == ["[{}, {p}, {q}, {p, q}]"]

    def test_every_subcommand_runs(self, files, capsys):
        for what in ["expansions", "partial-expansions", "kk", "extensions", "partial-extensions", "wf"]:
            assert run_cli(["ael", what, files["kp"]]) == 0
        for what in ["weak", "partial-weak", "kk", "extensions", "partial-extensions", "wf", "oracle"]:
            assert run_cli(["dl", what, files["pqp"]]) == 0
        for what in ["supported", "stable", "kk", "wf", "embed-check"]:
            assert run_cli(["lp", what, files["even"]]) == 0
        assert run_cli(["translate", "konolige", files["pqp"]]) == 0
        assert run_cli(["translate", "lp2dl", files["even"]]) == 0

    def test_json(self, files, capsys):
        assert run_cli(["ael", "kk", files["kp"], "--json"]) == 0
        obj = json.loads(capsys.readouterr().out)
        assert obj["command"] == "ael kk" and obj["semantics"] == "Kripke-Kleene"
        assert obj["pairs"] == [{"p": [[], ["p"]], "s": [["p"]]}]
        assert obj["iterations"] == 2 and len(obj["input_sha256"]) == 64

    def test_json_world_sets(self, files, capsys):
        assert run_cli(["dl", "weak", files["pqp"], "--json"]) == 0
        obj = json.loads(capsys.readouterr().out)
        assert obj["world_sets"] == [[["p"], ["p", "q"]], [[], ["p"], ["q"], ["p", "q"]]]

    def test_atoms_fix_order(self, files, capsys):
        assert run_cli(["ael", "expansions", files["kp"], "--atoms", "q,p"]) == 0
        assert out_lines(capsys)[1] == "[{p}, {q, p}]"

    def test_query(self, files, capsys):
        assert run_cli(["ael", "expansions", files["kp"], "--query", "p"]) == 0
        assert out_lines(capsys)[1:] == ["[{p}]  True", "[{}, {p}]  False"]

    def test_translate(self, files, capsys):
        assert run_cli(["translate", "konolige", files["pqp"]]) == 0
        assert out_lines(capsys) == ["Kp & ~K~q -> p"]

    def test_parse_error_exit_1(self, files, capsys):
        assert run_cli(["ael", "kk", files["bad"]]) == 1
        err = capsys.readouterr().err
        assert "line 1, column 7" in err

    def test_usage_errors_exit_1(self, files, capsys):
        assert run_cli(["ael", "nonsense", files["kp"]]) == 1
        assert run_cli(["ael", "kk", "/no/such/file"]) == 1
        assert run_cli(["ael", "kk", files["kp"], "--atoms", "q"]) == 1
        assert run_cli(["verify", "--theorem", "T99"]) == 1

    def test_verify_all(self, capsys):
        assert run_cli(["verify", "--all", "--seed", "7", "--n", "2", "--samples", "25"]) == 0
        lines = out_lines(capsys)
        assert [ln.split()[1] for ln in lines] == THEOREM_IDS
        assert all(ln.startswith("PASS") for ln in lines)

    def test_verify_failure_exit_2(self, monkeypatch, capsys):
        monkeypatch.setattr(dl, "reiter_oracle", lambda delta, v=None: [])
        assert run_cli(["verify", "--theorem", "T9", "--samples", "2"]) == 2
        out = capsys.readouterr().out
        assert out.startswith("FAIL T9") and "seed=0" in out

    def test_invariant_violation_exit_2(self, files, monkeypatch, capsys):
        from beliefpairs.errors import InvariantViolation

        def boom(*a, **k):
            raise InvariantViolation("iteration did not converge")

        monkeypatch.setattr(ael, "kripke_kleene", boom)
        assert run_cli(["ael", "kk", files["kp"]]) == 2
        assert "internal error" in capsys.readouterr().err

    def test_verify_report_dir(self, tmp_path, capsys):
        out = tmp_path / "rep"
        assert run_cli(["verify", "--theorem", "T1", "--theorem", "T6", "--samples", "3",
                        "--report-dir", str(out)]) == 0
        rows = list(csv.DictReader((out / "theorems.csv").open()))
        assert [r["theorem"] for r in rows] == ["T1", "T6"]
        assert (out / "theorems.png").stat().st_size > 0

    def test_bench(self, tmp_path, capsys):
        out = tmp_path / "bench"
        assert run_cli(["bench", "--ns", "1,2", "--samples", "2", "--report-dir", str(out)]) == 0
        lines = out_lines(capsys)
        assert lines[0] == "logic,method,n,instances,total_s,mean_ms"
        assert len(lines) == 1 + 2 * 2 * 3
        assert (out / "timing.csv").exists() and (out / "timing.png").stat().st_size > 0

    def test_bench_rejects_large_n(self, capsys):
        assert run_cli(["bench", "--ns", "4"]) == 1

    def test_help(self, capsys):
        assert run_cli(["--help"]) == 0
