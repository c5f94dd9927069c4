"""Cartan subalgebras of several dimensions in one algebra (n, m, s) = (4, 5, 2)."""
from nleibniz.cartan import cartan_search, example_5_4_candidates
from nleibniz.catalog import example_5_4


def main():
    A = example_5_4(4, 5, 2)
    fam = example_5_4_candidates(4, 5, 2)
    ev = cartan_search(A, seed=0, trials=64)
    for r in ev.reports:
        gens = ", ".join(A.basis_names[next(i for i, c in enumerate(b) if c)]
                         for b in r.subalgebra.basis) if r.label in fam else "..."
        print(f"{r.label:>6}  dim {r.dim}  1-nilpotent index {r.one_nilpotent_index}  <{gens}>")
    print("dimension spectrum:", list(ev.dimension_spectrum))
    print("pairwise non-conjugate across dimensions:", ev.non_conjugate)


if __name__ == "__main__":
    main()
