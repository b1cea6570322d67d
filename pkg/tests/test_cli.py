"""End-to-end tests for the command-line driver (in-process main())."""

import json

import pytest

from qu2.cli import main
from qu2.element import eq, from_json, parse_element


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


# ---------------------------------------------------------------- algebra verbs


def test_eq_verb(capsys):
    code, out, _ = run(capsys, "eq", "U U", "S[1] U S*[1] + S[2] U S*[2]")
    assert (code, out) == (0, "true\n")
    # a false predicate is still a successful run
    code, out, _ = run(capsys, "eq", "U", "1")
    assert (code, out) == (0, "false\n")


def test_normalize_depth_and_json(capsys):
    code, out, _ = run(capsys, "normalize", "U", "--depth", "1")
    assert code == 0
    assert out == "S[1] S*[2] + S[2] U S*[1]\n"

    code, out, _ = run(capsys, "normalize", "U U", "--json")
    assert code == 0
    assert eq(from_json(out), parse_element("U^2"))


def test_mul_chain(capsys):
    code, out, _ = run(capsys, "mul", "S[1]", "U", "S*[1]")
    assert code == 0
    assert eq(parse_element(out), parse_element("S[1] U S*[1]"))


def test_adjoint_unitary_membership(capsys):
    code, out, _ = run(capsys, "adjoint", "S[12] U^3")
    assert code == 0
    assert eq(parse_element(out), parse_element("U^-3 S*[12]"))

    code, out, _ = run(capsys, "unitary", "S[1] S*[2] + S[2] S*[1]")
    assert (code, out) == (0, "true\n")

    code, out, _ = run(capsys, "membership", "P[1] + -1*P[2]", "--json")
    assert code == 0
    assert json.loads(out) == {
        "in_O2": True, "in_QT": True, "in_F2": True, "in_D2": True,
    }

    code, out, _ = run(capsys, "membership", "U")
    assert (code, out) == (
        0, "in_O2=false in_QT=true in_F2=false in_D2=false\n"
    )


def test_putnam_lines(capsys):
    code, out, _ = run(capsys, "putnam", "U")
    assert (code, out) == (0, "1\t1\n")
    code, out, _ = run(capsys, "putnam", "S[1] U^2 S*[1] + S[2] S*[2]")
    assert (code, out) == (0, "0\tP[2]\n4\tP[1]\n")


def test_factor_lines(capsys):
    code, out, _ = run(capsys, "factor", "S[1] S*[2] + S[2] S*[1]")
    assert code == 0
    assert out == "bd\tP[1] + P[2]\nv\tS[1] S*[2] + S[2] S*[1]\n"


def test_charge_element_and_diagram(capsys):
    code, out, _ = run(capsys, "charge", "U^5")
    assert (code, out) == (0, "5\n")
    code, out, _ = run(
        capsys, "charge", '{"tplus": 0, "tminus": 0, "tau": [0], "v": [5]}'
    )
    assert (code, out) == (0, "5\n")


def test_diagram_reduce_render(capsys):
    code, out, _ = run(capsys, "diagram", "S[1] S*[2] + S[2] S*[1]")
    assert code == 0
    d = json.loads(out)
    assert d["tau"] == [1, 0] and d["v"] == [0, 0]

    # an unreduced identity folds back to the trivial diagram
    code, out, _ = run(capsys, "reduce", "S[1] S*[1] + S[2] S*[2]")
    assert code == 0
    assert json.loads(out) == {"tplus": 0, "tminus": 0, "tau": [0], "v": [0]}

    code, out, _ = run(capsys, "render", "S[1] S*[2] + S[2] S*[1]")
    assert code == 0
    assert out.startswith("graph") and "dashed" in out
    code, out, _ = run(
        capsys, "render", '{"tplus": 0, "tminus": 0, "tau": [0], "v": [0]}',
        "--format", "tikz",
    )
    assert code == 0
    assert "tikzpicture" in out


# ---------------------------------------------------------------- eval verb


def test_eval_phase_word(capsys):
    # Ad(U_z)(U) picks up the phase z
    code, out, _ = run(capsys, "eval", "Uz[1/4] U Uz*", "e_5")
    assert (code, out) == (0, "(1/4)*e_6\n")
    code, out, _ = run(capsys, "eval", "Uz[1/4] U Uz*", "e_5", "--json")
    assert code == 0
    assert json.loads(out) == {"index": 6, "phase": "1/4"}

    # rightmost letter acts first; S2* kills odd indices
    code, out, _ = run(capsys, "eval", "S2* S1", "3")
    assert (code, out) == (0, "zero\n")
    code, out, _ = run(capsys, "eval", "S2* S1", "3", "--json")
    assert (code, out) == (0, '"zero"\n')

    # the --z flag supplies the angle for bare Uz tokens
    code, out, _ = run(capsys, "eval", "Uz", "e_1", "--z", "1/2")
    assert (code, out) == (0, "(1/2)*e_1\n")


def test_eval_errors(capsys):
    # unknown token and missing angle are parse errors
    assert run(capsys, "eval", "Q", "e_0")[0] == 2
    assert run(capsys, "eval", "Uz", "e_0")[0] == 2
    assert run(capsys, "eval", "Uz[1/4] Uz[1/2]", "e_0")[0] == 2
    # a non-dyadic angle is a domain error
    code, _, err = run(capsys, "eval", "Uz[1/3]", "e_1")
    assert code == 1 and "dyadic" in err


# ---------------------------------------------------------------- endomorphisms


def test_check_ext_verb(capsys):
    code, out, _ = run(
        capsys, "check-ext", "(2 3)", "--level", "2", "--template", "U+"
    )
    assert (code, out) == (0, "ext1=true ext2=true extendible=true\n")

    # passes the first equation but not the second
    code, out, _ = run(
        capsys, "check-ext", "(1 3 4)", "--level", "2", "--template", "M2:0",
        "--json",
    )
    assert code == 0
    assert json.loads(out) == {"ext1": True, "ext2": False, "extendible": False}


def test_templates_verb(capsys):
    code, out, _ = run(capsys, "templates", "--level", "2")
    assert code == 0
    labels = [line.split("\t")[0] for line in out.splitlines()]
    assert labels == ["U+", "U-", "M1:0", "M2:0",
                      "AD:id", "AD*:id", "AD:(1 2)", "AD*:(1 2)"]


def test_construct_verb(capsys):
    code, out, _ = run(
        capsys, "construct", "--level", "2", "--template", "U+",
        "--perm", "(1 2)",
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("u\t(1 3 4 2)\t")
    assert lines[1] == "u_tilde\tU^2"
    assert lines[2] == "verified\ttrue"

    code, out, _ = run(
        capsys, "construct", "--level", "3", "--template", "M1:0",
        "--sigma1", "(1 2)", "--json",
    )
    assert code == 0
    assert json.loads(out)["verified"] is True


def test_enumerate_verb(capsys):
    code, out, _ = run(capsys, "enumerate", "--level", "2", "--all-templates")
    assert code == 0
    assert out.splitlines()[-1] == "10 results"

    brute = run(capsys, "enumerate", "--level", "2", "--template", "U+")
    cons = run(capsys, "enumerate", "--level", "2", "--template", "U+",
               "--mode", "constructive")
    assert brute == cons
    assert brute[1].splitlines()[-1] == "2 results"


def test_enumerate_jobs_deterministic(capsys):
    one = run(capsys, "enumerate", "--level", "2", "--all-templates",
              "--jobs", "1", "--json")
    two = run(capsys, "enumerate", "--level", "2", "--all-templates",
              "--jobs", "4", "--json")
    assert one == two


def test_probe_verb(capsys):
    code, out, _ = run(capsys, "probe", "id", "--level", "1", "--depth", "3")
    assert code == 0
    assert out == "stabilized_at=1\twitness=P[1] + P[2]\n"

    code, out, _ = run(capsys, "probe", "S[1] S*[2] + S[2] S*[1]",
                       "--depth", "2", "--json")
    assert code == 0
    assert json.loads(out)["stabilized_at"] == 1


# ---------------------------------------------------------------- exit codes


def test_exit_codes(capsys):
    # parse error in an element expression
    code, _, err = run(capsys, "normalize", "S[3]")
    assert code == 2 and "parse error" in err
    # brute force past the capacity bound
    code, _, err = run(capsys, "enumerate", "--level", "4", "--template", "U+")
    assert code == 1 and "tractable" in err
    # cycle notation without --level
    assert run(capsys, "check-ext", "(1 2)", "--template", "U+")[0] == 1
    # usage errors come from argparse
    with pytest.raises(SystemExit) as exc:
        main(["no-such-verb"])
    assert exc.value.code == 2
    capsys.readouterr()


# ---------------------------------------------------------------- suites


def test_verify_table_packaged(capsys):
    code, out, _ = run(capsys, "verify-table")
    assert code == 0
    assert out.splitlines()[-1] == "40/40 verified"


def test_verify_table_path_and_env(capsys, tmp_path, monkeypatch):
    # two-row fixture: one good row, one with a corrupted cycle column
    from qu2.cli import _table_path

    with open(_table_path(None)) as f:
        good = f.readline().rstrip("\n")
    cycles, elem, tilde = good.split("\t")
    bad = "\t".join(["(1 2)", elem, tilde])
    fixture = tmp_path / "rows.tsv"
    fixture.write_text(f"# comment line\n{good}\n{bad}\n")

    code, out, _ = run(capsys, "verify-table", str(fixture))
    assert code == 0
    lines = out.splitlines()
    assert lines[-1] == "1/2 verified"
    assert lines[0].startswith("row 2:")

    # the environment variable supplies the default path
    monkeypatch.setenv("QU2_TABLE", str(fixture))
    code, out, _ = run(capsys, "verify-table", "--json")
    assert code == 0
    payload = json.loads(out)
    assert (payload["total"], payload["verified"]) == (2, 1)


def test_verify_counts_level2(capsys):
    code, out, _ = run(capsys, "verify-counts", "--level", "2")
    assert code == 0
    assert out.splitlines()[-1] == (
        "verify-counts level=2 templates_ok=4/4 checks=6 result=PASS"
    )


def test_verify_counts_level3_json(capsys):
    code, out, _ = run(capsys, "verify-counts", "--level", "3", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["result"] == "PASS"
    by_label = {t["label"]: t["count"] for t in payload["templates"]}
    assert by_label == {"U+": 24, "U-": 24,
                       "M1:0": 4, "M2:0": 4, "M1:1": 4, "M2:1": 4}
