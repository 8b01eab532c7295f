"""The block words and where their squares stop being equal to them.

u_{n,k,m} starts with x1..x(n+k) and repeats a shuffled block 2m-1 times, so
every variable occurs exactly 2m times. On a Brandt semigroup whose group
exponent divides 2m each value of the word is idempotent and the word equals
its square; otherwise the checker finds the least counterexample.
"""

from invalg.checker import check_identity, render_report
from invalg.claims import build_algebra
from invalg.terms import Word, build_u, print_term


def square(word):
    return Word(word.letters * 2)


def show(title, S, word):
    rep = check_identity(S, word, square(word))
    print(title)
    print(render_report(rep, S, word, square(word)))


def main():
    u1 = build_u(2, 2, 1)
    print("u_{2,2,1} =", print_term(u1))
    print()
    show("exponent 2 divides 2m = 2, so the square identity holds:",
         build_algebra("brandt:2:2"), u1)
    show("exponent 3 does not divide 2, and a counterexample appears:",
         build_algebra("brandt:3:1"), u1)
    show("raising m to 3 makes 2m = 6 a multiple of 3 again:",
         build_algebra("brandt:3:1"), build_u(2, 2, 3))


if __name__ == "__main__":
    main()
