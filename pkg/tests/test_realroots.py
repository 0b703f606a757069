"""Bivariate isolation, sign certification and the request/response format."""

import pytest
from gmpy2 import mpq

from lvcert.errors import PositiveDimensional
from lvcert.intervals import RatInterval
from lvcert.poly import SparsePoly
from lvcert.realroots import (format_request, format_response, mrealroot,
                              parse_request, parse_response)

VARS = ("lambda", "n")
DELTA = mpq(1, 10 ** 10)
BIG = mpq(10 ** 6)
PLANE = {"lambda": RatInterval(-BIG, BIG), "n": RatInterval(-BIG, BIG)}


def p(text):
    return SparsePoly.from_text(text, VARS)


def test_circle_line_roots():
    # lambda^2 + n^2 = 2 meets lambda = n at (1,1) and (-1,-1)
    circle = p("lambda^2 + n^2 + -2")
    line = p("lambda + -1 * n")
    boxes = mrealroot((circle, line), VARS, DELTA, [], PLANE)
    assert len(boxes) == 2
    mids = sorted(box.lambda_iv.midpoint() for box in boxes)
    assert abs(mids[0] + 1) < DELTA and abs(mids[1] - 1) < DELTA
    for box in boxes:
        assert box.certified
        assert box.lambda_iv.width() <= DELTA
        assert box.n_iv.width() <= DELTA


def test_irrational_root_enclosed():
    # lambda^2 = 2, n = lambda: roots at (+-sqrt(2), +-sqrt(2))
    boxes = mrealroot((p("lambda^2 + -2"), p("lambda + -1 * n")),
                      VARS, DELTA, [], PLANE)
    assert len(boxes) == 2
    pos = [b for b in boxes if b.lambda_iv.lo > 0][0]
    assert pos.lambda_iv.lo ** 2 < 2 < pos.lambda_iv.hi ** 2


def test_region_filter():
    circle = p("lambda^2 + n^2 + -2")
    line = p("lambda + -1 * n")
    region = {"lambda": RatInterval(mpq(-10), mpq(0)),
              "n": RatInterval(mpq(-10), mpq(0))}
    boxes = mrealroot((circle, line), VARS, DELTA, [], region)
    assert len(boxes) == 1
    assert boxes[0].lambda_iv.hi < 0


def test_sign_vector_strict_and_shared_zero():
    circle = p("lambda^2 + n^2 + -2")
    line = p("lambda + -1 * n")
    signs = [p("lambda + n"),          # sign of 2*lambda at the roots
             p("lambda + -5"),         # always negative near the roots
             p("lambda + -1 * n")]     # shares every root: undetermined
    boxes = mrealroot((circle, line), VARS, DELTA, signs, PLANE)
    by_mid = {1 if b.lambda_iv.midpoint() > 0 else -1: b for b in boxes}
    assert by_mid[1].signs == [1, -1, 0]
    assert by_mid[-1].signs == [-1, -1, 0]


def test_common_factor_split_keeps_isolated_roots():
    shared = p("lambda + -1 * n")
    boxes = mrealroot((shared * p("lambda + -1"), shared * p("n + -2")),
                      VARS, DELTA, [], PLANE)
    assert len(boxes) == 1
    assert abs(boxes[0].lambda_iv.midpoint() - 1) < DELTA
    assert abs(boxes[0].n_iv.midpoint() - 2) < DELTA


def test_positive_dimensional_detected():
    # purely one-dimensional: the common zeros form the whole line
    shared = p("lambda + -1 * n")
    with pytest.raises(PositiveDimensional):
        mrealroot((shared, shared * p("n + -2")), VARS, DELTA, [])


def test_no_real_roots():
    boxes = mrealroot((p("lambda^2 + n^2 + 1"), p("lambda + -1 * n")),
                      VARS, DELTA, [])
    assert boxes == []


def test_request_round_trip():
    region = {"lambda": RatInterval(mpq(-3, 2), mpq(0)),
              "n": RatInterval(mpq(-1), mpq(0))}
    text = format_request((p("lambda^2 + -2"), p("lambda + -1 * n")),
                          VARS, DELTA, [p("lambda + n")], region)
    req = parse_request(text)
    assert req["system"][0] == p("lambda^2 + -2")
    assert req["delta"] == DELTA
    assert req["sign_polys"] == [p("lambda + n")]
    assert req["region"]["lambda"] == region["lambda"]
    assert format_request(tuple(req["system"]), req["vars"], req["delta"],
                          req["sign_polys"], req["region"]) == text


def test_response_round_trip():
    boxes = mrealroot((p("lambda^2 + n^2 + -2"), p("lambda + -1 * n")),
                      VARS, DELTA,
                      [p("lambda + n"), p("lambda + -1 * n")], PLANE)
    text = format_response(boxes, VARS)
    back = parse_response(text)
    assert len(back) == len(boxes)
    for a, b in zip(sorted(boxes, key=lambda x: x.lambda_iv.lo),
                    sorted(back, key=lambda x: x.lambda_iv.lo)):
        assert a.lambda_iv == b.lambda_iv
        assert a.n_iv == b.n_iv
        assert a.signs == b.signs
        assert a.certified == b.certified
