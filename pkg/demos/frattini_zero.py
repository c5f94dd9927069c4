"""Frattini subalgebra of the simple-plus-module example (n, m) = (3, 2) is zero."""
from nleibniz.catalog import example_5_2
from nleibniz.structure import PROVEN, frattini_pipeline


def main():
    A = example_5_2(3, 2)
    rep, qb = frattini_pipeline(A, seed=0, trials=64)
    for c in rep.certificates:
        if c.level == PROVEN:
            print(f"maximal (proven, codim 1): {c.source}")
    print("quotient rule:", qb.reason)
    print("simplicity certificate:", qb.simplicity.level, f"trials={qb.simplicity.trials}")
    for line in rep.rules:
        print("rule:", line)
    print(f"F(L) has dimension {rep.value.dim} ({rep.exactness})")


if __name__ == "__main__":
    main()
