# A first-order theory decided by automata: natural-number addition with
# numbers written as bit-words.  Sentences compile to gap NFAs track by track,
# so truth, witnesses, and definable relations all reduce to NFA questions.
#
# Run:  python3 demos/04_deciding_arithmetic.py

from ordinalia.examples import decode_natural, encode_natural, presburger_presentation
from ordinalia.gapcode import accepts_word
from ordinalia.logic import compile_formula, decide, find_witness, parse_formula
from ordinalia.words import convolve

SIG = {"Plus": 3, "=": 2}
pres = presburger_presentation()

# -- numerals are least-significant-bit-first words ----------------------------

six = encode_natural(6)
print("6 as a word  :", six)
print("decodes back :", decode_natural(six))

# -- sentences decide ----------------------------------------------------------

for text in [
    "(forall x (exists y (Plus x x y)))",          # doubling is total
    "(exists x (forall y (Plus y x y)))",          # a right identity exists
    "(forall x (forall y (exists z (Plus x z y))))",  # subtraction is not
]:
    f = parse_formula(text, SIG)
    print("%-46s %s" % (text, decide(f, pres)))

# -- existential sentences yield concrete witnesses ------------------------------

f = parse_formula("(exists x (exists y (and (Plus y y x) (not (= x y)))))", SIG)
ws = find_witness(f, pres)
print()
print("witness for 'some x is a double of a different y':")
for name, w in zip(("x", "y"), ws):
    print("  %s = %s  -> %d" % (name, w, decode_natural(w)))

# -- compiled relations are reusable automata -----------------------------------

plus = compile_formula(parse_formula("(Plus x y z)", SIG), pres)
print()
print("compiled addition NFA, size", plus.size)
for a, b in [(5, 9), (0, 0), (11, 3)]:
    tracks = convolve([encode_natural(a), encode_natural(b), encode_natural(a + b)])
    bad = convolve([encode_natural(a), encode_natural(b), encode_natural(a + b + 1)])
    print(
        "  %2d+%2d: correct sum accepted=%s, wrong sum accepted=%s"
        % (a, b, accepts_word(plus, tracks), accepts_word(plus, bad))
    )
