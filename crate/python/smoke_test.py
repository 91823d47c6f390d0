"""Smoke test for the pycoldual extension."""

import pycoldual


def main():
    assert pycoldual.eval_expr("gl2", "a*b - (q)*b*a") == "0"
    half = pycoldual.eval_expr("gl2", "det^(1/2)", theta=0.3 + 0.1j, phi=-0.2j)
    assert "ht" in half, half
    try:
        pycoldual.eval_expr("gl2", "b^(1/2)")
    except ValueError as e:
        assert "non-group-like" in str(e)
    else:
        raise AssertionError("b^(1/2) accepted")
    try:
        pycoldual.eval_expr("gl2", "a * * b")
    except SyntaxError as e:
        assert "position 4" in str(e)
    else:
        raise AssertionError("bad syntax accepted")

    r = pycoldual.ybe_residual("gl11", 0.31 - 0.17j, 0.23 + 0.41j, "2", "-1", "1/2")
    assert r < 1e-9, r

    cfg = "model = gl2\nsuite = ybe,relations\nsamples = 2\nseed = 3\ncolours = 1,2,-1/2\n"
    ok, report = pycoldual.verify(cfg)
    again = pycoldual.verify(cfg)[1]
    assert ok, report
    assert report == again
    body = [l for l in report.splitlines() if not l.startswith("# ")]
    assert len(body) > 0 and all(l.startswith('{"suite":') for l in body)
    try:
        pycoldual.verify("colours = \n")
    except ValueError as e:
        assert "colours" in str(e)
    else:
        raise AssertionError("empty colour list accepted")
    print(f"smoke test ok: {len(body)} records")


if __name__ == "__main__":
    main()
