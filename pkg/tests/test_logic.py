"""First-order layer over the automatic presentation machinery.

The Presburger presentation is the workhorse here because every sentence in
the battery is an ordinary arithmetic fact that can be checked by eye.
"""

import pytest

from ordinalia.examples import (
    PRESBURGER_SENTENCES,
    decode_natural,
    encode_natural,
    presburger_presentation,
)
from ordinalia.logic import (
    LogicError,
    compile_formula,
    decide,
    find_witness,
    format_formula,
    free_variables,
    load_presentation,
    parse_formula,
    presentation_from_dict,
    presentation_to_dict,
    save_presentation,
)

SIG = {"Plus": 3, "=": 2}


@pytest.fixture(scope="module")
def pres():
    return presburger_presentation()


# ---------------------------------------------------------------- parsing


def test_parse_format_round_trip():
    texts = [
        "(exists x (Plus x x x))",
        "(forall x (exists y (and (Plus x y x) (not (= x y)))))",
        "(forall x (-> (Plus x x x) (= x x)))",
        "(or (= x y) (= y x))",
    ]
    for text in texts:
        f = parse_formula(text, SIG)
        assert format_formula(f) == text
        assert format_formula(parse_formula(format_formula(f), SIG)) == text


def test_parse_rejects_rebinding():
    with pytest.raises(LogicError):
        parse_formula("(exists x (forall x (= x x)))", SIG)


def test_parse_rejects_wrong_arity():
    with pytest.raises(LogicError):
        parse_formula("(Plus x y)", SIG)
    with pytest.raises(LogicError):
        parse_formula("(= x y z)", SIG)


def test_parse_rejects_unknown_relation():
    with pytest.raises(LogicError):
        parse_formula("(Times x y z)", SIG)


def test_parse_rejects_garbage():
    for bad in ["", "(", "((", "(exists)", "(exists x)", "(and (= x y))", ")"]:
        with pytest.raises(LogicError):
            parse_formula(bad, SIG)


def test_free_variables():
    assert free_variables(parse_formula("(Plus x y z)", SIG)) == {"x", "y", "z"}
    assert free_variables(parse_formula("(exists x (Plus x y z))", SIG)) == {"y", "z"}
    assert free_variables(parse_formula("(forall x (exists y (Plus x y y)))", SIG)) == set()


# ---------------------------------------------------------------- deciding


def test_presburger_battery(pres):
    """Each sentence is a pencil-and-paper arithmetic fact."""
    for text, expected in PRESBURGER_SENTENCES:
        assert decide(parse_formula(text, SIG), pres) is expected, text


def test_equality_is_reflexive_and_nothing_differs_from_itself(pres):
    assert decide(parse_formula("(forall x (= x x))", SIG), pres)
    assert not decide(parse_formula("(exists x (not (= x x)))", SIG), pres)


def test_decide_handles_boolean_sentence_structure(pres):
    t = "(exists x (Plus x x x))"
    f = "(forall x (Plus x x x))"
    assert decide(parse_formula(f"(and {t} (not {f}))", SIG), pres)
    assert not decide(parse_formula(f"(and {t} {f})", SIG), pres)
    assert decide(parse_formula(f"(or {f} {t})", SIG), pres)
    assert decide(parse_formula(f"(-> {f} {f})", SIG), pres)
    assert not decide(parse_formula(f"(-> {t} {f})", SIG), pres)


def test_decide_rejects_open_formulas(pres):
    with pytest.raises(LogicError):
        decide(parse_formula("(Plus x y z)", SIG), pres)


def test_decide_rejects_unused_bound_variable(pres):
    with pytest.raises(LogicError):
        decide(parse_formula("(exists x (exists y (Plus y y y)))", SIG), pres)


# ---------------------------------------------------------------- witnesses


def test_witness_for_doubling(pres):
    f = parse_formula("(exists x (exists y (Plus y y x)))", SIG)
    words = find_witness(f, pres)
    assert words is not None and len(words) == 2
    x, y = (decode_natural(w) for w in words)
    assert y + y == x


def test_witness_re_verifies_atoms(pres):
    f = parse_formula(
        "(exists x (exists y (and (Plus x y y) (not (= x y)))))", SIG
    )
    words = find_witness(f, pres)
    assert words is not None
    x, y = (decode_natural(w) for w in words)
    assert x + y == y and x != y  # forces x = 0, y >= 1


def test_witness_none_when_no_solution_exists(pres):
    f = parse_formula("(exists x (and (Plus x x x) (not (= x x))))", SIG)
    assert find_witness(f, pres) is None


def test_witness_rejects_non_existential_prefix(pres):
    with pytest.raises(LogicError):
        find_witness(parse_formula("(forall x (= x x))", SIG), pres)


def test_witness_rejects_quantified_matrix(pres):
    f = parse_formula("(exists x (forall y (Plus y x y)))", SIG)
    with pytest.raises(LogicError):
        find_witness(f, pres)


def test_witness_words_live_in_the_domain(pres):
    f = parse_formula("(exists x (= x x))", SIG)
    (w,) = find_witness(f, pres)
    assert encode_natural(decode_natural(w)) == w


# ---------------------------------------------------------------- compiling


def test_compile_open_formula_recognizes_solution_tuples(pres):
    from ordinalia.gapcode import accepts_word
    from ordinalia.words import convolve

    nfa = compile_formula(parse_formula("(Plus x y z)", SIG), pres)
    for a, b in [(0, 0), (1, 2), (3, 3), (5, 0)]:
        good = convolve(
            [
                encode_natural(a),
                encode_natural(b),
                encode_natural(a + b),
            ]
        )
        bad = convolve(
            [
                encode_natural(a),
                encode_natural(b),
                encode_natural(a + b + 1),
            ]
        )
        assert accepts_word(nfa, good)
        assert not accepts_word(nfa, bad)


def test_compile_negation_stays_inside_the_domain(pres):
    from ordinalia.gapcode import accepts_word
    from ordinalia.words import blank_word

    nfa = compile_formula(parse_formula("(not (= x y))", SIG), pres)
    from ordinalia.words import convolve

    pair = convolve([encode_natural(2), encode_natural(3)])
    same = convolve([encode_natural(2), encode_natural(2)])
    assert accepts_word(nfa, pair)
    assert not accepts_word(nfa, same)
    # a track that is not a valid numeral is outside the domain product
    from ordinalia.ordinals import from_int
    from ordinalia.words import make_word

    junk = make_word(pres.alpha, [(from_int(3), "1")], pres.domain.alphabet)
    assert not accepts_word(nfa, convolve([junk, encode_natural(1)]))


# ---------------------------------------------------------------- persistence


def test_presentation_dict_round_trip(pres):
    d = presentation_to_dict(pres)
    back = presentation_from_dict(d)
    assert presentation_to_dict(back) == d
    for text, expected in PRESBURGER_SENTENCES[:4]:
        assert decide(parse_formula(text, SIG), back) is expected


def test_presentation_file_round_trip(pres, tmp_path):
    path = tmp_path / "pres.json"
    save_presentation(pres, path)
    back = load_presentation(path)
    assert decide(parse_formula("(exists x (Plus x x x))", SIG), back)
    assert not decide(parse_formula("(forall x (Plus x x x))", SIG), back)
