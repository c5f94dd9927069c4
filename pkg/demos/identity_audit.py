"""Run the identity check on every catalog algebra and show one violation if any."""
from nleibniz.catalog import default_catalog
from nleibniz.core import verify_fundamental_identity


def main():
    for name, A in default_catalog().items():
        rep = verify_fundamental_identity(A)
        line = f"{name:<14} {'pass' if rep.passed else 'FAIL'}"
        if rep.violations:
            x, y, r = rep.violations[0]
            nm = A.basis_names
            res = " + ".join(f"{c}*{nm[j]}" for j, c in enumerate(r) if c)
            line += (f"  ({len(rep.violations)} violations, e.g. x=({', '.join(nm[i] for i in x)})"
                     f" y=({', '.join(nm[i] for i in y)}) residual {res})")
        print(line)


if __name__ == "__main__":
    main()
