"""Reduced words, balls, and straight-line compression.

Walks the free group on two generators out to radius 5, then shows why
straight-line words matter: a power like x^(10^12) is three nodes, not a
trillion letters.
"""

from resfin import (
    Ball,
    SLBuilder,
    format_word,
    multiply,
    parse_word,
    sl_flatten,
    sl_length_bound,
    word_growth,
)

print("Ball sizes in the free group of rank 2")
print("radius  closed form  enumerated")
for n in range(6):
    enumerated = sum(1 for _ in Ball(2, n))
    print(f"{n:6d}  {word_growth(2, n):11d}  {enumerated:10d}")

print()
print("The first few words in search order (length, then letters):")
words = [format_word(w) for w in Ball(2, 2)]
print("  " + " ".join(words[:12]) + " ...")

u = parse_word("abA")
v = parse_word("aB")
print()
print(f"multiply({format_word(u)}, {format_word(v)}) = {format_word(multiply(u, v))}")

print()
print("Straight-line words keep huge elements cheap:")
b = SLBuilder(2)
x = b.gen(1)
big = b.pow(x, 10**12)
w = b.build(big)
print(f"  x^(10^12) uses {len(w.nodes)} nodes, length bound {sl_length_bound(w)}")
print(f"  flattening under a cap of 100 gives: {sl_flatten(w, 100)}")

comm = b.comm(b.pow(x, 3), b.conj(b.gen(2), x))
w = b.build(comm)
flat = sl_flatten(w, 100)
print(f"  [x^3, x y x^-1] flattens to {format_word(flat)} (length {len(flat)})")
