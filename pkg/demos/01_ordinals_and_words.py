# Ordinal arithmetic below omega^omega, and the sparse words built on it.
#
# Run:  python3 demos/01_ordinals_and_words.py

from ordinalia.ordinals import add, from_int, omega_power, parse_ordinal
from ordinalia.words import alphabet, convolve, component, make_word, parse_word, sorted_support

# -- ordinals are ascending coefficient tuples in Cantor normal form --------

w = parse_ordinal("w")
w2 = parse_ordinal("w^2")
a = parse_ordinal("w^2 + w*3 + 4")

print("a              =", a)
print("a.degree       =", a.degree)
print("a.coefficient  =", [a.coefficient(i) for i in range(3)])

# addition absorbs everything below the right-hand side's top term:
print("(w^2+3) + w*5  =", add(parse_ordinal("w^2+3"), parse_ordinal("w*5")))
# ... and adds coefficients when the top terms line up:
print("(w^2+w*3) + w*5 =", add(parse_ordinal("w^2+w*3"), parse_ordinal("w*5")))

# limit ordinals have no last element; successors do
print("w*2 is a limit:", parse_ordinal("w*2").is_limit)
print("w*2+1 is not:  ", not parse_ordinal("w*2+1").is_limit)

# -- words: a length ordinal plus a finite set of non-blank entries ---------

AB = alphabet(["a", "b"], blank="_")
v = make_word(w2, [(from_int(3), "a"), (parse_ordinal("w*2+1"), "b")], AB)

print()
print("v              =", v)
print("support(v)     =", [str(p) for p in sorted_support(v)])
print("v.at(3)        =", v.at(from_int(3)))
print("v.at(7)        =", v.at(from_int(7)), "(blank everywhere off-support)")

# literals round-trip, so words travel through files and the CLI unchanged
again = parse_word(str(v), AB)
assert again == v

# -- convolution: several tracks over one length ------------------------------

u = make_word(w2, [(from_int(3), "b")], AB)
pair = convolve([v, u])
print()
print("convolve(v, u) =", pair)
print("track 0 again  =", component(pair, 0) == v)
print("track 1 again  =", component(pair, 1) == u)

# degrees big enough never to matter in practice still behave
big = omega_power(40, 7)
print()
print("w^40 * 7       =", big, "   degree", big.degree)
