import json

from traincat.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out.strip(), out.err.strip()


def test_coset_build_surface(capsys):
    code, out, _ = run(capsys, "coset", "build", "--pair", "tri",
                       "--levels", "0,0", "--g", "r:(1 2); y:(); b:()")
    assert code == 0
    data = json.loads(out)
    assert data["n_plus"] == 2  # one nontrivial component of 4 faces


def test_coset_count_tri(capsys):
    code, out, _ = run(capsys, "coset", "count", "--pair", "tri",
                       "--n", "3", "--levels", "0,0")
    assert code == 0 and out == "11"


def test_coset_count_respects_bound_env(capsys, monkeypatch):
    monkeypatch.setenv("TRAINCAT_BOUND", "10")
    code, _, err = run(capsys, "coset", "count", "--pair", "tri",
                       "--n", "3", "--levels", "0,0")
    assert code == 3 and "bound" in err


def test_coset_mul_with_identity_preserves_canon(capsys):
    code, built, _ = run(capsys, "coset", "canon", "--pair", "bi",
                         "--levels", "1,2", "--g", "(1 2); (2 3)")
    assert code == 0
    code, out, _ = run(capsys, "coset", "mul", "--pair", "bi",
                       "--levels", "1,2", "--g", "(1 2); (2 3)",
                       "--levels2", "2,2", "--h", "(); ()")
    assert code == 0
    prod = json.loads(out)
    import tempfile, os
    with tempfile.NamedTemporaryFile("w", suffix=".json", delete=False) as fh:
        json.dump(prod, fh)
        path = fh.name
    try:
        code, canon2, _ = run(capsys, "coset", "canon", "--pair", "bi",
                              "--g", "@" + path)
        assert code == 0 and canon2 == built
    finally:
        os.unlink(path)


def test_char_thoma(capsys):
    code, out, _ = run(capsys, "char", "thoma", "--alpha", "1", "--g", "(1 2 3)")
    assert code == 0 and out == "1.0"
    code, out, _ = run(capsys, "char", "thoma", "--beta", "1", "--g", "(1 2)")
    assert code == 0 and out == "-1.0"
    code, out, _ = run(capsys, "char", "thoma", "--alpha", "0.5,0.5", "--g", "(1 2)")
    assert code == 0 and out == "0.5"


def test_char_nessonov(capsys):
    code, out, _ = run(capsys, "char", "nessonov", "--A", "ones(3)",
                       "--S", "[[.,1,0],[0,.,1],[1,0,.]]")
    assert code == 0 and out == "1.0"


def test_char_young(capsys):
    code, out, _ = run(capsys, "char", "young",
                       "--xis", "[[1,0],[0,1]]", "--g", "(c1.1 c2.1)")
    assert code == 0 and out == "0.0"


def test_char_assign(capsys):
    code, out, _ = run(capsys, "char", "assign", "--copies", "3",
                       "--g", "(); (); (1 2)", "--coeffs", "[[[1]]]")
    assert code == 0 and out == "1.0"


def test_parse_errors_exit_2(capsys):
    code, _, err = run(capsys, "char", "thoma", "--alpha", "0.9,0.9", "--g", "()")
    assert code == 2
    code, _, err = run(capsys, "coset", "build", "--pair", "tri",
                       "--levels", "0,0", "--g", "(1 2)")
    assert code == 2 and "components" in err


def test_export_json_round_trip(capsys, tmp_path):
    target = tmp_path / "coset.json"
    code, _, _ = run(capsys, "export", "json", "--pair", "tri",
                     "--levels", "1,1", "--g", "(1 3 2); (); (1 2)",
                     "--out", str(target))
    assert code == 0
    code, canon1, _ = run(capsys, "coset", "canon", "--pair", "tri",
                          "--g", "@" + str(target))
    code2, canon2, _ = run(capsys, "coset", "canon", "--pair", "tri",
                           "--levels", "1,1", "--g", "(1 3 2); (); (1 2)")
    assert code == code2 == 0 and canon1 == canon2


def test_export_dot_double_triangle(capsys):
    code, out, _ = run(capsys, "export", "dot", "--pair", "tri",
                       "--levels", "1,1", "--g", "(); (); ()")
    assert code == 0
    assert out.count("[shape=triangle") == 1 and out.count("[shape=invtriangle") == 1
    assert out.count(" -- ") == 3
    code, out, _ = run(capsys, "export", "dot", "--pair", "tri",
                       "--levels", "0,0", "--g", "(); (); (1 2)")
    assert code == 0
    assert out.count("shape=") == 4 and out.count(" -- ") == 6


def test_export_io_error(capsys):
    code, _, err = run(capsys, "export", "json", "--pair", "tri",
                       "--levels", "0,0", "--g", "(); (); ()",
                       "--out", "/nonexistent/dir/x.json")
    assert code == 4


def test_verify_suites_pass(capsys):
    code, out, _ = run(capsys, "verify", "all", "--seed", "5", "--cases", "15")
    assert code == 0
    assert out.endswith("PASS")


def test_verify_deterministic_for_seed(capsys):
    _, out1, _ = run(capsys, "verify", "gluing", "--seed", "3", "--cases", "10")
    _, out2, _ = run(capsys, "verify", "gluing", "--seed", "3", "--cases", "10")
    assert out1 == out2
