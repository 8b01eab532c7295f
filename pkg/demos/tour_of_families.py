"""Build each packaged algebra and print its basic shape."""

from invalg.claims import build_algebra
from invalg.core_algebra import FiniteSemigroup

SPECS = [
    "b2", "b21", "rook:1", "rook:2", "rook:3", "rook3-restricted",
    "sigma7", "sigma7:bool", "brandt:2:2", "brandt:3:1",
    "group:2x2", "product:group:2,brandt:2:2", "adjoin1:b2",
    "kadourek:2:1", "kadourek:2:2",
]


def describe(spec):
    algebra = build_algebra(spec)
    if isinstance(algebra, FiniteSemigroup):
        bits = [f"size={algebra.size}"]
        bits.append("inverse=yes" if algebra.inv is not None else "inverse=no")
        if algebra.zero is not None:
            bits.append(f"zero={algebra.labels[algebra.zero]!r}")
        if algebra.identity is not None:
            bits.append(f"identity={algebra.labels[algebra.identity]!r}")
        return " ".join(bits)
    return f"size={algebra.size} ai-semiring"


def main():
    for spec in SPECS:
        print(f"{spec:30s} {describe(spec)}")
    print()
    S = build_algebra("rook:2")
    print("rook:2 elements:", ", ".join(S.labels))
    print("multiplication is the rook-matrix product; for example")
    a, b = S.labels.index("10/00"), S.labels.index("01/10")
    print(f"  {S.labels[a]} * {S.labels[b]} = {S.labels[S.mul[a, b]]}")


if __name__ == "__main__":
    main()
