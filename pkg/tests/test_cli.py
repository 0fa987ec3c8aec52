import math
import subprocess
import sys
import time

import numpy as np
import pytest

from spikedtw import cli, routes
from spikedtw.stats import ks_distance
from spikedtw.tables import DistributionTable


def run(argv, capsys):
    code = cli.main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def top_samples(table_text, n, k=1):
    """Recover the n sample values from an ECDF table (ties share a row)."""
    rows = DistributionTable.from_csv(table_text).select(k=k)
    F = np.array([r.F for r in rows])
    counts = np.round(np.diff(np.concatenate([[0.0], F])) * n).astype(int)
    return np.repeat([r.x for r in rows], counts)


def test_sample_deterministic(capsys):
    argv = ["sample", "laguerre", "--n", "60", "--samples", "300", "--seed", "5", "--w", "0"]
    a = run(argv, capsys)
    b = run(argv, capsys)
    c = run(argv[:-3] + ["6", "--w", "0"], capsys)
    assert a[0] == 0
    assert a[1] == b[1]
    assert a[1] != c[1]
    assert a[1].startswith("method,beta,w,k,x,F,stderr\nmc-laguerre,2.0,0.0,1,")


def test_sample_laguerre_example(capsys, hm):
    code, out, _ = run(["sample", "laguerre", "--beta", "2", "--n", "400", "--p", "400", "--w", "inf",
                        "--k", "1", "--samples", "5000", "--seed", "7"], capsys)
    assert code == 0
    s = top_samples(out, 5000)
    assert len(s) == 5000
    assert ks_distance(s, hm.eval_F) < 0.05


def test_sample_hermite_example(capsys):
    code, out, _ = run(["sample", "hermite", "--beta", "1", "--n", "400", "--w", "0", "--k", "1",
                        "--samples", "5000"], capsys)
    assert code == 0
    s = top_samples(out, 5000)
    ref = routes.reference_cdf(1.0, 0.0, source="pde")
    assert ks_distance(s, ref) < 0.05


def test_sample_two_levels(capsys):
    code, out, _ = run(["sample", "airy", "--k", "2", "--samples", "200", "--len", "200"], capsys)
    assert code == 0
    t = DistributionTable.from_csv(out)
    assert {r.k for r in t.rows} == {1, 2}
    assert all(r.method == "mc-airy" for r in t.rows)


@pytest.mark.parametrize("argv", [
    ["sample", "laguerre", "--ell", "-1"],
    ["sample", "laguerre", "--ell", "0"],
    ["sample", "hermite", "--ell", "2"],
    ["sample", "laguerre", "--w", "50", "--n", "20"],
    ["sample", "bogus"],
    ["sample", "laguerre", "--w", "abc"],
])
def test_sample_usage_errors(argv, capsys):
    code, _, err = run(argv, capsys)
    assert code == 2
    assert err


def test_couple(capsys):
    code, out, err = run(["couple", "laguerre", "--w", "inf,1,0,-1", "--samples", "400",
                          "--seed", "3"], capsys)
    assert code == 0
    assert "violations: 0 of 400" in err
    lines = out.splitlines()
    assert lines[0] == "sample,w=inf,w=1.0,w=0.0,w=-1.0"
    v = np.array([[float(t) for t in ln.split(",")[1:]] for ln in lines[1:]])
    assert v.shape == (400, 4)
    assert np.all(np.diff(v, axis=1) >= -1e-9)  # smaller w, larger spike
    assert np.corrcoef(v[:, 1], v[:, 2])[0, 1] > 0.9


def test_couple_single_w_matches_sample(capsys):
    _, a, _ = run(["couple", "hermite", "--w", "0", "--n", "50", "--samples", "20", "--seed", "1"], capsys)
    _, b, _ = run(["sample", "hermite", "--w", "0", "--n", "50", "--samples", "20", "--seed", "1"], capsys)
    vals = sorted(float(ln.split(",")[1]) for ln in a.splitlines()[1:])
    xs = [r.x for r in DistributionTable.from_csv(b).sorted_rows()]
    assert vals == xs


def test_cdf_pde_vs_painleve(capsys):
    _, a, _ = run(["cdf", "pde", "--x", "0"], capsys)
    _, b, _ = run(["cdf", "painleve", "--x", "0"], capsys)
    Fa = DistributionTable.from_csv(a).rows[0].F
    Fb = DistributionTable.from_csv(b).rows[0].F
    assert abs(Fa - Fb) < 1e-3


def test_cdf_painleve_needs_beta_2_or_4(capsys):
    code, _, err = run(["cdf", "painleve", "--beta", "3"], capsys)
    assert code == 2
    assert "beta" in err


@pytest.mark.parametrize("method", ["pde", "painleve"])
def test_cdf_monotone(method, capsys):
    _, out, _ = run(["cdf", method, "--beta", "4", "--w", "0.5", "--x", "-5:3:0.25"], capsys)
    rows = DistributionTable.from_csv(out).sorted_rows()
    assert len(rows) == 33
    assert np.all(np.diff([r.F for r in rows]) >= 0)


def test_cdf_sde_beta6(capsys):
    code, out, _ = run(["cdf", "sde", "--beta", "6", "--w", "1", "--x", "-1.5,-0.5", "--paths", "4000"],
                       capsys)
    assert code == 0
    _, ref, _ = run(["cdf", "pde", "--beta", "6", "--w", "1", "--x", "-1.5,-0.5"], capsys)
    for r, q in zip(DistributionTable.from_csv(out).sorted_rows(),
                    DistributionTable.from_csv(ref).sorted_rows()):
        assert r.method == "sde" and q.method == "pde"
        assert abs(r.F - q.F) < 3 * r.stderr


def test_config_and_env_seed(tmp_path, capsys, monkeypatch):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# sample settings\nn = 40\nsamples = 50\nseed = 9\n")
    _, a, _ = run(["--config", str(cfg), "sample", "hermite"], capsys)
    _, b, _ = run(["sample", "hermite", "--n", "40", "--samples", "50", "--seed", "9"], capsys)
    assert a == b
    # command-line flags win over the file
    _, c, _ = run(["--config", str(cfg), "sample", "hermite", "--seed", "10"], capsys)
    _, d, _ = run(["sample", "hermite", "--n", "40", "--samples", "50", "--seed", "10"], capsys)
    assert c == d
    monkeypatch.setenv("SPIKEDTW_SEED", "10")
    _, e, _ = run(["sample", "hermite", "--n", "40", "--samples", "50"], capsys)
    assert e == d
    monkeypatch.setenv("SPIKEDTW_SEED", "ten")
    assert run(["sample", "hermite"], capsys)[0] == 2


def test_bad_config(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("colour = blue\n")
    assert run(["--config", str(cfg), "sample", "hermite"], capsys)[0] == 2
    cfg.write_text("no equals sign\n")
    assert run(["--config", str(cfg), "sample", "hermite"], capsys)[0] == 2
    assert run(["--config", str(tmp_path / "missing"), "sample", "hermite"], capsys)[0] == 2


def test_out_file(tmp_path, capsys):
    path = tmp_path / "t.csv"
    code, out, _ = run(["cdf", "painleve", "--x", "-1,0", "--out", str(path)], capsys)
    assert code == 0 and out == ""
    data = path.read_bytes()
    assert b"\r" not in data
    assert data.count(b"\n") == 3


def test_verify_suite(capsys):
    code, out, _ = run(["verify", "--suite", "painleve,identities"], capsys)
    assert code == 0
    lines = out.splitlines()
    assert all("tol=" in ln for ln in lines if ln.startswith(("PASS", "FAIL")))
    assert run(["verify", "--suite", "nothing"], capsys)[0] == 2


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "spikedtw", "cdf", "painleve", "--x", "0"],
                       capture_output=True, text=True)
    assert r.returncode == 0
    assert r.stdout.startswith("method,beta,w,k,x,F,stderr\npainleve,2.0,inf,1,0.0,")
    r = subprocess.run([sys.executable, "-m", "spikedtw"], capture_output=True, text=True)
    assert r.returncode == 2


def test_verify_quick_runtime(capsys):
    t0 = time.time()
    code, out, _ = run(["verify", "--quick"], capsys)
    elapsed = time.time() - t0
    print(out)
    assert code in (0, 1)
    assert "checks passed" in out
    assert all("tol=" in ln for ln in out.splitlines() if ln.startswith(("PASS", "FAIL")))
    assert elapsed < 300
