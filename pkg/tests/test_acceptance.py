"""The ten acceptance checks, one test per criterion, all exact arithmetic."""

import itertools
import time
from fractions import Fraction

from support import (
    basis_words,
    exhaustive_tangles,
    oq,
    random_sl2,
    random_tangle,
    seeded,
)
from test_qtorus import PUNCTURED_TORUS, SQUARE, _arc, _cap_weight, _mul
from test_tangle import _coproduct_with_ratfunc, _eta_state, _stated_tl

from bigon.classical import (
    GroupoidRep,
    StatedPath,
    cut_check,
    evaluate_at_one,
    splice_cuts,
    trace_arc,
)
from bigon.hopf import (
    GENERATORS,
    OqElement,
    antipode,
    canonical_monomials,
    co_r,
    coproduct_word,
    counit,
    counit_word,
    from_canonical,
    is_positive,
    multiply,
    reduce_bigon,
    rho_word,
    to_canonical,
)
from bigon.qtorus import (
    NormalCurve,
    QTElement,
    TRIANGLE,
    chekhov_fock,
    check_balanced,
    qt_invert,
    qt_multiply,
    quantum_trace,
)
from bigon.ring import ONE, ZERO, RatFunc, half, q_binom, q_power
from bigon.tangle import (
    SlicedTangle,
    TLDiagram,
    TLElement,
    jones_wenzl,
    kauffman_reduce,
    parse_tangle_word,
    rt_evaluate,
    skein_element,
)

STATES = ("+", "-")


def _report(n, label):
    print("criterion %d (%s): PASS" % (n, label))


# ---------------------------------------------------------------------------
# criterion 1: Hopf axioms, exhaustive at low degree plus 200 random cases
# ---------------------------------------------------------------------------


def _check_coassoc_counit_antipode(w):
    left = {}
    right = {}
    for (w1, w2), c in coproduct_word(w):
        for (u1, u2), c1 in coproduct_word(w1):
            key = (u1, u2, w2)
            left[key] = left.get(key, ZERO) + c * c1
        for (u1, u2), c2 in coproduct_word(w2):
            key = (w1, u1, u2)
            right[key] = right.get(key, ZERO) + c * c2
    assert {k: v for k, v in left.items() if v} == {k: v for k, v in right.items() if v}, w

    kept_l = OqElement()
    kept_r = OqElement()
    folded_l = OqElement()
    folded_r = OqElement()
    for (w1, w2), c in coproduct_word(w):
        kept_l = kept_l + oq(w2, counit_word(w1) * c)
        kept_r = kept_r + oq(w1, counit_word(w2) * c)
        folded_l = folded_l + multiply(antipode(oq(w1)), oq(w2)).scale(c)
        folded_r = folded_r + multiply(oq(w1), antipode(oq(w2))).scale(c)
    assert kept_l == oq(w) and kept_r == oq(w), w
    unit = OqElement.from_word("", counit_word(w))
    assert folded_l == unit and folded_r == unit, w


def _check_pairing_pair(w1, w2):
    # exchange law and convolution inverse
    flip_l = OqElement()
    flip_r = OqElement()
    conv = ZERO
    for (x1, x2), cx in coproduct_word(w1):
        for (y1, y2), cy in coproduct_word(w2):
            c = cx * cy
            flip_l = flip_l + multiply(oq(y1), oq(x1)).scale(c * rho_word(x2, y2))
            flip_r = flip_r + multiply(oq(x2), oq(y2)).scale(c * rho_word(x1, y1))
            conv = conv + c * rho_word(x1, y1) * rho_word(x2, y2, "bar")
    assert flip_l == flip_r, (w1, w2)
    assert conv == counit_word(w1) * counit_word(w2), (w1, w2)


def _check_pairing_products(wx, wy, wz):
    lhs = co_r(multiply(oq(wx), oq(wy)), oq(wz))
    rhs = ZERO
    for (z1, z2), cz in coproduct_word(wz):
        rhs = rhs + cz * rho_word(wx, z1) * rho_word(wy, z2)
    assert lhs == rhs, (wx, wy, wz)
    lhs = co_r(oq(wx), multiply(oq(wy), oq(wz)))
    rhs = ZERO
    for (x1, x2), cx in coproduct_word(wx):
        rhs = rhs + cx * rho_word(x1, wz) * rho_word(x2, wy)
    assert lhs == rhs, (wx, wy, wz)


def test_criterion_01_hopf_axioms():
    start = time.monotonic()
    exhaustive = basis_words(2)
    for w in exhaustive:
        _check_coassoc_counit_antipode(w)
    for w1, w2 in itertools.product(exhaustive, repeat=2):
        _check_pairing_pair(w1, w2)
    for triple in itertools.product(GENERATORS, repeat=3):
        _check_pairing_products(*triple)
    rng = seeded(101)
    pool = basis_words(4)
    for _ in range(200):
        w = rng.choice(pool)
        _check_coassoc_counit_antipode(w)
        _check_pairing_pair(rng.choice(pool), rng.choice(pool))
        _check_pairing_products(rng.choice(pool), rng.choice(pool), rng.choice(pool))
    elapsed = time.monotonic() - start
    assert elapsed < 10.0, elapsed
    _report(1, "hopf axioms, %.1fs" % elapsed)


# ---------------------------------------------------------------------------
# criteria 2 and 3: the lift theorem and the bracket oracle on one corpus
# ---------------------------------------------------------------------------


def _tangle_corpus():
    corpus = list(exhaustive_tangles(3, 3))
    rng = seeded(202)
    corpus += [random_tangle(rng, 4, 6) for _ in range(200)]
    return corpus


def test_criterion_02_lift_theorem():
    start = time.monotonic()
    for tangle in _tangle_corpus():
        assert counit(skein_element(tangle)) == rt_evaluate(tangle)
    elapsed = time.monotonic() - start
    assert elapsed < 30.0, elapsed
    _report(2, "lift theorem, %.1fs" % elapsed)


def test_criterion_03_bracket_oracle():
    for tangle in _tangle_corpus():
        assert skein_element(tangle) == kauffman_reduce(tangle)
    _report(3, "bracket oracle")


# ---------------------------------------------------------------------------
# criterion 4: the sixteen pairing values on generators
# ---------------------------------------------------------------------------


def test_criterion_04_pairing_table():
    expected = {
        ("a", "a"): q_power(1),
        ("d", "d"): q_power(1),
        ("a", "d"): q_power(-1),
        ("d", "a"): q_power(-1),
        ("b", "c"): q_power(1) - q_power(-3),
    }
    for g1, g2 in itertools.product(GENERATORS, repeat=2):
        assert co_r(oq(g1), oq(g2)) == expected.get((g1, g2), ZERO), (g1, g2)
    _report(4, "pairing table")


# ---------------------------------------------------------------------------
# criterion 5: projectors up to five strands and their coproduct binomials
# ---------------------------------------------------------------------------


def test_criterion_05_projectors():
    for n in range(1, 6):
        jw = jones_wenzl(n)
        assert jw.identity_coefficient() == RatFunc(ONE)
        assert jw * jw == jw
        for i in range(n - 1):
            hook = TLElement.hook(n, i)
            zero = TLElement(n)
            assert hook * jw == zero and jw * hook == zero
    for n, mu_l, mu_r in [
        (2, ("+", "+"), ("+", "+")),
        (2, ("+", "-"), ("-", "+")),
        (3, ("+", "+", "+"), ("+", "+", "+")),
        (3, ("-", "+", "+"), ("+", "+", "-")),
    ]:
        jw = jones_wenzl(n)
        lhs = _coproduct_with_ratfunc(_stated_tl(jw, mu_l, mu_r))
        rhs = {}
        for j in range(n + 1):
            eta = _eta_state(n, j)
            coeff = RatFunc(q_binom(n, j, 4))
            left = _stated_tl(jw, mu_l, eta)
            right = _stated_tl(jw, eta, mu_r)
            for w1, c1 in left.items():
                for w2, c2 in right.items():
                    key = (w1, w2)
                    s = rhs.get(key, RatFunc(ZERO)) + coeff * c1 * c2
                    if s:
                        rhs[key] = s
                    elif key in rhs:
                        del rhs[key]
        assert lhs == rhs, (n, mu_l, mu_r)
    _report(5, "projectors and binomials")


# ---------------------------------------------------------------------------
# criterion 6: positivity of canonical-basis products
# ---------------------------------------------------------------------------


def test_criterion_06_positivity():
    monos = canonical_monomials(3)
    for m1, m2 in itertools.product(monos, repeat=2):
        if len(m1) + len(m2) > 3:
            continue
        x = multiply(from_canonical({m1: ONE}), from_canonical({m2: ONE}))
        assert is_positive(to_canonical(x)), (m1, m2)
    _report(6, "canonical positivity")


# ---------------------------------------------------------------------------
# criterion 7: the triangle exchange relations under the corner dictionary
# ---------------------------------------------------------------------------


def test_criterion_07_triangle_relations():
    q1, q2, q5 = q_power(1), q_power(2), half(5)
    for t in range(3):
        first, second, third = t, (t + 1) % 3, (t + 2) % 3
        for mu, nu, mup, nup in itertools.product(STATES, repeat=4):
            lhs = _mul(_arc(second, (mu, nu)), _arc(first, (mup, nup)))
            rhs = _mul(_arc(first, (nu, nup)), _arc(second, (mu, mup))).scale(q1) - _mul(
                _arc(third, (nup, mu))
            ).scale(q2 * _cap_weight(nu, mup))
            assert lhs == rhs
        for nu, nup in itertools.product(STATES, repeat=2):
            cap = _cap_weight(nu, nup)
            lhs = _mul(_arc(first, ("-", nu)), _arc(first, ("+", nup)))
            rhs = _mul(_arc(first, ("+", nu)), _arc(first, ("-", nup))).scale(q2)
            assert lhs == rhs - QTElement.unit(TRIANGLE).scale(q5 * cap)
            lhs = _mul(_arc(first, (nu, "-")), _arc(first, (nup, "+")))
            rhs = _mul(_arc(first, (nu, "+")), _arc(first, (nup, "-"))).scale(q2)
            assert lhs == rhs - QTElement.unit(TRIANGLE).scale(q5 * cap)
            lhs = _mul(_arc(first, ("-", nu)), _arc(second, (nup, "+")))
            rhs = _mul(_arc(first, ("+", nu)), _arc(second, (nup, "-"))).scale(q2) - _mul(
                _arc(third, (nu, nup))
            ).scale(q5)
            assert lhs == rhs
            lhs = _mul(_arc(first, (nu, "-")), _arc(third, ("+", nup)))
            rhs = _mul(_arc(first, (nu, "+")), _arc(third, ("-", nup))).scale(q2) + _mul(
                _arc(second, (nup, nu))
            ).scale(half(-1))
            assert lhs == rhs
    # the worked vanishing instance: both sides are zero on the nose
    lhs = _mul(_arc(0, "-+"), _arc(0, "+-"))
    rhs = _mul(_arc(0, "++"), _arc(0, "--")).scale(q_power(2)) - QTElement.unit(TRIANGLE).scale(
        half(5) * _cap_weight("+", "-")
    )
    assert lhs == rhs == QTElement(TRIANGLE, {})
    # corner inverses
    for corner in range(3):
        plus = _arc(corner, "++")
        minus = _arc(corner, "--")
        assert qt_multiply(plus, minus) == QTElement.unit(TRIANGLE)
        assert qt_multiply(minus, plus) == QTElement.unit(TRIANGLE)
        assert qt_invert(plus) == minus
    _report(7, "triangle relations")


# ---------------------------------------------------------------------------
# criterion 8: quantum traces are balanced; order independence; edge matrix
# ---------------------------------------------------------------------------


def test_criterion_08_quantum_trace():
    curves = []
    for states in itertools.product(STATES, repeat=2):
        curves.append(NormalCurve([("F0", 1, 2), ("F1", 2, 1)], end_states=states))
        curves.append(NormalCurve([("F0", 0, 2), ("F1", 2, 0)], end_states=states))
        curves.append(NormalCurve([("F0", 1, 2), ("F1", 2, 0)], end_states=states))
        curves.append(NormalCurve([("F0", 0, 1)], end_states=states))
        curves.append(NormalCurve([("F1", 0, 1)], end_states=states))
    for curve in curves:
        assert check_balanced(SQUARE, quantum_trace(SQUARE, curve))
    loops = [
        NormalCurve([("F0", 0, 1), ("F1", 1, 0)], closed=True),
        NormalCurve([("F0", 1, 0), ("F1", 0, 1)], closed=True),
        NormalCurve([("F0", 0, 2), ("F1", 2, 0)], closed=True),
        NormalCurve(
            [("F0", 0, 1), ("F1", 1, 2), ("F0", 2, 0), ("F1", 0, 1), ("F0", 1, 2), ("F1", 2, 0)],
            closed=True,
        ),
    ]
    for loop in loops:
        assert check_balanced(PUNCTURED_TORUS, quantum_trace(PUNCTURED_TORUS, loop))
    # disjoint curves multiply the same in either order
    for st1, st2 in itertools.product(itertools.product(STATES, repeat=2), repeat=2):
        one = quantum_trace(SQUARE, NormalCurve([("F0", 0, 1)], end_states=st1))
        two = quantum_trace(SQUARE, NormalCurve([("F1", 0, 1)], end_states=st2))
        assert qt_multiply(one, two) == qt_multiply(two, one)
    # every edge pair of the once-punctured torus q-commutes with weight ±2
    torus = chekhov_fock(PUNCTURED_TORUS)
    assert torus.rank == 3
    for i, j in itertools.product(range(3), repeat=2):
        assert abs(torus.matrix[i][j]) == (0 if i == j else 2)
    _report(8, "quantum trace")


# ---------------------------------------------------------------------------
# criterion 9: trace identities at v = 1 for 100 random representations
# ---------------------------------------------------------------------------


def test_criterion_09_classical_limit():
    circle, _ = parse_tangle_word("cup@0;cap@0")
    assert rt_evaluate(SlicedTangle(circle, (), ())).specialize(1) == -2
    det = multiply(oq("a"), oq("d")) - multiply(oq("b"), oq("c"))
    rng = seeded(909)
    for _ in range(100):
        rep = GroupoidRep({name: random_sl2(rng) for name in ("al", "ar", "bl", "br")})
        for l0, l1, r0, r1 in itertools.product(STATES, repeat=4):
            cross = trace_arc(rep, StatedPath(["al", "ar"], states=(l0, r1))) * trace_arc(
                rep, StatedPath(["bl", "br"], states=(l1, r0))
            )
            par = trace_arc(rep, StatedPath(["al", "br"], states=(l0, r0))) * trace_arc(
                rep, StatedPath(["bl", "ar"], states=(l1, r1))
            )
            turn = trace_arc(rep, StatedPath(["al", "~bl"], states=(l0, l1))) * trace_arc(
                rep, StatedPath(["~br", "O", "ar"], states=(r0, r1))
            )
            assert cross == par + turn
        for word in (["al", "CUT", "bl"], ["al", "CUT", "bl", "CUT", "br"]):
            for st in itertools.product(STATES, repeat=2):
                path = StatedPath(word, states=st)
                assert cut_check(rep, path) == trace_arc(rep, splice_cuts(path))
        values = {
            g: trace_arc(rep, StatedPath(["al"], states=st))
            for g, st in zip("abcd", ["++", "+-", "-+", "--"])
        }
        assert evaluate_at_one(det, values) == Fraction(1)
    _report(9, "classical limit")


# ---------------------------------------------------------------------------
# criterion 10: the reduced bigon quotient is an algebra map
# ---------------------------------------------------------------------------


def _x_mul(p1, p2):
    out = {}
    for e1, c1 in p1.items():
        for e2, c2 in p2.items():
            s = out.get(e1 + e2, ZERO) + c1 * c2
            if s:
                out[e1 + e2] = s
            elif e1 + e2 in out:
                del out[e1 + e2]
    return out


def test_criterion_10_reduced_bigon():
    assert reduce_bigon(multiply(oq("a"), oq("d"))) == {0: ONE}
    assert reduce_bigon(oq("b")) == {}
    assert reduce_bigon(oq("c")) == {}
    words = basis_words(3)
    for w1, w2 in itertools.product(words, repeat=2):
        lhs = reduce_bigon(multiply(oq(w1), oq(w2)))
        rhs = _x_mul(reduce_bigon(oq(w1)), reduce_bigon(oq(w2)))
        assert lhs == rhs, (w1, w2)
    _report(10, "reduced bigon")
