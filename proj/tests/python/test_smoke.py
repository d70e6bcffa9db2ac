import math
import os
import subprocess

import pytest

import melcert

A22 = [[(5.878219435, 5.878219454), (-13.12140618, -13.12140616)],
       [(4.972558758, 4.97255877), (-2.358981737, -2.358981727)]]
DELTA2 = [[(-1.299703331, 1.286153144), (-0.9977804236, 0.9891960037)],
          [(-0.7568318161, 0.7534173913), (-0.5842185843, 0.5818916067)]]
EPS_DERIV = [(-1.030549066e-05, 1.030549066e-05), (-9.608989689e-06, 9.608989695e-06)]


def test_version():
    assert melcert.tool_version().startswith("melcert ")


def test_format_double_round_trips():
    for x in (0.1, 1e-7, 1.4142135623730951, -3.5e300, 5e-324):
        s = melcert.format_double(x)
        assert float(s) == x
        assert len(s) <= len(repr(x))


def test_sqrt2():
    r = melcert.certify_root(["y^2 - 2"], ["y"], [(1, 2)], y0=[1.5])
    assert r["verified"]
    lo, hi = r["enclosure"][0]
    assert lo <= math.sqrt(2) <= hi
    assert hi - lo <= 1e-12


def test_no_real_root():
    assert not melcert.certify_root(["y^2 + 1"], ["y"], [(-2, 2)])["verified"]


def test_bad_polynomial():
    with pytest.raises(ValueError):
        melcert.certify_root(["y^^2"], ["y"], [(1, 2)])


def test_norms_and_margin():
    assert 3.4230 <= melcert.sigma_min_lb(A22) <= 3.42309
    assert 1.89 <= melcert.spectral_norm_ub(DELTA2) <= 2.000249209 * (1 + 1e-6)
    assert abs(melcert.ivec_norm_ub(EPS_DERIV) - 1.409027398e-5) <= 1e-12
    c = melcert.verify_practical(0, 2, 1e-5, 1e-7, [], [], 0.0, A22, DELTA2, melcert.ivec_norm_ub(EPS_DERIV))
    assert c["verdict"] == "verified"
    assert 1.3810e-7 <= c["margins"]["y2"] <= 1.3812e-7


def test_samples_lie_on_the_separatrix():
    for side in ("unstable", "stable"):
        rows = melcert.manifold_samples(side, count=16, rho=1e-4, time=5.0)
        assert len(rows) == 16
        for x in rows:
            (hlo, hhi), (klo, khi) = melcert.integrals(x)
            assert max(abs(hlo), abs(hhi)) <= 1e-8
            assert max(abs(klo), abs(khi)) <= 1e-8
    assert melcert.manifold_samples("unstable", count=0) == []


def test_config_errors():
    with pytest.raises(melcert.ConfigError):
        melcert.manifold_samples("unstable", config_json='{"R": 1e-5, "bogus": 1}')
    with pytest.raises(ValueError):
        melcert.manifold_samples("sideways")


@pytest.mark.skipif("MELCERT_CLI" not in os.environ, reason="command line tool not given")
def test_cli_exit_codes(tmp_path):
    cli = os.environ["MELCERT_CLI"]
    cfg = tmp_path / "c.json"
    cfg.write_text('{"variables": ["y"], "equations": ["y^2 - 2"], "Y": [[1, 2]]}')
    out = tmp_path / "out.json"
    assert subprocess.run([cli, "certify-root", "--config", str(cfg), "--out", str(out)]).returncode == 0
    assert '"verdict": "verified"' in out.read_text()
    cfg.write_text('{"variables": ["y"], "equations": ["y^2 + 1"], "Y": [[-1, 1]]}')
    assert subprocess.run([cli, "certify-root", "--config", str(cfg), "--out", str(out)]).returncode == 1
    missing = tmp_path / "missing.json"
    assert subprocess.run([cli, "lu-verify", "--config", str(missing), "--out", str(out)]).returncode == 2
