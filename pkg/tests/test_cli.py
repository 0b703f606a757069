"""CLI subcommands that run quickly: isolate and classify."""

import pytest

from lvcert.cli import main
from lvcert.poly import SparsePoly
from lvcert.realroots import format_request, parse_response

MATRIX = """-1/2, -1/4, lambda
-1/4, -1/2, mu
1 * n, 2 * n, -1/2
"""


def test_isolate_round_trip(tmp_path, capsys):
    PV = ("lambda", "n")
    p = SparsePoly.from_text("lambda^2 + -2", PV)
    q = SparsePoly.from_text("lambda + -1 * n", PV)
    req = tmp_path / "request.txt"
    req.write_text(format_request((p, q), PV, "1/1000000",
                                  [SparsePoly.from_text("lambda", PV)]))
    rc = main(["isolate", "--system", str(req)])
    assert rc == 0
    boxes = parse_response(capsys.readouterr().out)
    # default region is the negative quadrant: only (-sqrt2, -sqrt2)
    assert len(boxes) == 1
    assert boxes[0].signs == [-1]
    assert boxes[0].certified


def test_classify_prints_invariants(tmp_path, capsys):
    m = tmp_path / "matrix.txt"
    m.write_text(MATRIX)
    rc = main(["classify", "--matrix", str(m),
               "--point", "lambda=-1/3,n=-1/5,mu=-1/3"])
    assert rc == 0
    out = capsys.readouterr().out
    assert "alpha_12:" in out
    assert "class:" in out


def test_classify_rejects_bad_point(tmp_path):
    m = tmp_path / "matrix.txt"
    m.write_text(MATRIX)
    with pytest.raises(ValueError):
        main(["classify", "--matrix", str(m), "--point", "bogus"])


def test_verify_reports_parse_error(tmp_path, capsys):
    bad = tmp_path / "cert.json"
    bad.write_text("{}")
    rc = main(["verify", "--certificate", str(bad)])
    assert rc == 1
