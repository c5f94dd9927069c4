"""Named example algebras and the JSON definition format.

Families
--------
``abelian``        zero product on ``d`` generators.
``chain``          ``[e_i, e_1, ..., e_1] = e_{i+1}``; nilpotent.
``example_3_10``   ``[e_k, e_1, ..., e_1] = e_k`` for ``2 <= k <= m``.
``example_3_11``   ``[e_j, e_1, ..., e_{n-1}] = alpha_j e_j`` for ``k <= j <= m``.
``example_5_2``    simple Lie n-algebra on ``e_1..e_{n+1}`` extended by
                   ``[x_k, e_j, ..., e_j] = alpha_{kj} x_k``.
``example_5_4``    the three-part table whose Cartan subalgebras come in
                   four different dimensions.
``supplemented``   simple Lie n-algebra extended by
                   ``[x_k, e_p, ..., e_p] = sum_i alpha[k][p][i] x_i``.
"""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Sequence

from .core import Algebra, AlgebraDefinition, build_algebra, is_alternating
from .errors import BadParams, ParseError
from .linalg import ZERO, format_scalar, parse_scalar, to_fraction


def _q(x) -> Fraction:
    try:
        return to_fraction(x)
    except (TypeError, ValueError) as exc:
        raise BadParams(f"bad coefficient {x!r}") from exc


def abelian(d: int = 3, n: int = 3) -> Algebra:
    if d < 0:
        raise BadParams("dimension must be non-negative")
    if n < 2:
        raise BadParams("arity must be at least 2")
    return build_algebra(AlgebraDefinition(n, d, [], [], (), f"abelian(d={d},n={n})",
                                           {"family": "abelian", "params": {"d": d, "n": n}}))


def chain(d: int = 4, n: int = 3) -> Algebra:
    if d < 1 or n < 2:
        raise BadParams("chain needs d >= 1 and n >= 2")
    prods = [((i,) + (0,) * (n - 1), {i + 1: 1}) for i in range(d - 1)]
    return build_algebra(AlgebraDefinition(n, d, prods, [], (), f"chain(d={d},n={n})",
                                           {"family": "chain", "params": {"d": d, "n": n}}))


def example_3_10(m: int = 4, n: int = 3) -> Algebra:
    # the basis runs over e_1..e_m (the range of k), not e_1..e_n
    if m < 1 or n < 2:
        raise BadParams("example_3_10 needs m >= 1 and n >= 2")
    prods = [((k,) + (0,) * (n - 1), {k: 1}) for k in range(1, m)]
    return build_algebra(AlgebraDefinition(n, m, prods, [], (), f"example_3_10(m={m},n={n})",
                                           {"family": "example_3_10", "params": {"m": m, "n": n}}))


def example_3_11(n: int = 4, m: int = 5, k: int = 2, alpha: Sequence = (1, -1, 2, 3)) -> Algebra:
    """``alpha`` lists ``alpha_k, ..., alpha_m`` in order."""
    if n < 3:
        raise BadParams("example_3_11 needs n >= 3")
    if not 1 <= k < n - 1:
        raise BadParams(f"need 1 <= k < n-1, got k={k}, n={n}")
    if m < n - 1:
        raise BadParams(f"need m >= n-1 so that e_1..e_(n-1) exist, got m={m}")
    alpha = [_q(a) for a in alpha]
    if len(alpha) != m - k + 1:
        raise BadParams(f"alpha must list alpha_{k}..alpha_{m} ({m - k + 1} values)")
    if any(a == 0 for a in alpha):
        raise BadParams("violated: alpha_k * ... * alpha_m != 0")
    if sum(alpha[:n - 1 - k + 1]) != 0:
        raise BadParams(f"violated: sum of alpha_{k}..alpha_{n - 1} must be 0")
    tail = tuple(range(n - 1))
    prods = [((j - 1,) + tail, {j - 1: alpha[j - k]}) for j in range(k, m + 1)]
    params = {"n": n, "m": m, "k": k, "alpha": [format_scalar(a) for a in alpha]}
    return build_algebra(AlgebraDefinition(n, m, prods, [], (), f"example_3_11(n={n},m={m},k={k})",
                                           {"family": "example_3_11", "params": params}))


def _simple_lie_products(n: int) -> list:
    # [e_1, .., e_{p-1}, e_{p+1}, .., e_{n+1}] = e_p on indices 0..n
    return [(tuple(i for i in range(n + 1) if i != p), {p: 1}) for p in range(n + 1)]


def _names(n: int, m: int) -> tuple:
    return tuple(f"e{i + 1}" for i in range(n + 1)) + tuple(f"x{k + 1}" for k in range(m))


def default_alpha_5_2(n: int, m: int) -> list:
    # alpha_{kj} = k (-1)^(j+1), 1-based. Generic tables break the identity:
    # each x_k-form must be invariant under R(e, .., e) on the e-span.
    return [[(k + 1) * (-1) ** j for j in range(n + 1)] for k in range(m)]


def example_5_2(n: int = 3, m: int = 2, alpha: Sequence | None = None) -> Algebra:
    """``alpha[k][j]`` is the weight of ``x_{k+1}`` under ``R(e_{j+1}, ..., e_{j+1})``."""
    if n < 3:
        raise BadParams("example_5_2 needs n >= 3 (for n = 2 the identity fails)")
    if m < 0:
        raise BadParams("m must be non-negative")
    alpha = default_alpha_5_2(n, m) if alpha is None else alpha
    if len(alpha) != m or any(len(row) != n + 1 for row in alpha):
        raise BadParams(f"alpha must be an {m} x {n + 1} table")
    alpha = [[_q(a) for a in row] for row in alpha]
    for k, row in enumerate(alpha):
        if not any(row):
            raise BadParams(f"violated: row {k + 1} of alpha must not vanish")
    prods = _simple_lie_products(n)
    for k in range(m):
        for j in range(n + 1):
            if alpha[k][j]:
                prods.append(((n + 1 + k,) + (j,) * (n - 1), {n + 1 + k: alpha[k][j]}))
    params = {"n": n, "m": m, "alpha": [[format_scalar(a) for a in r] for r in alpha]}
    return build_algebra(AlgebraDefinition(n, n + 1 + m, prods, [list(range(n + 1))], _names(n, m),
                                           f"example_5_2(n={n},m={m})",
                                           {"family": "example_5_2", "params": params}))


def example_5_4(n: int = 4, m: int = 5, s: int = 2) -> Algebra:
    if n < 3:
        raise BadParams("example_5_4 needs n >= 3")
    if not 1 <= s <= min(m, n + 1):
        raise BadParams(f"need 1 <= s <= min(m, n+1), got s={s}")
    prods = _simple_lie_products(n)
    for k in range(s):
        prods.append(((n + 1 + k,) + (k,) * (n - 1), {n + 1 + k: 1}))
    for i in range(1, m - s + 1):
        xk = n + 1 + s + i - 1
        prods.append(((xk,) + (s - 1,) * (n - 1), {xk: 1}))
    return build_algebra(AlgebraDefinition(n, n + 1 + m, prods, [list(range(n + 1))], _names(n, m),
                                           f"example_5_4(n={n},m={m},s={s})",
                                           {"family": "example_5_4",
                                            "params": {"n": n, "m": m, "s": s}}))


def supplemented_condition_violations(alpha, n: int, m: int) -> list:
    """Index tuples (k, j, p, q) where sum_i a[k][p][i] a[i][q][j] != sum_i a[k][q][i] a[i][p][j]."""
    bad = []
    for k in range(m):
        for j in range(m):
            for p in range(n + 1):
                for q in range(p + 1, n + 1):
                    lhs = sum((alpha[k][p][i] * alpha[i][q][j] for i in range(m)), ZERO)
                    rhs = sum((alpha[k][q][i] * alpha[i][p][j] for i in range(m)), ZERO)
                    if lhs != rhs:
                        bad.append((k + 1, j + 1, p + 1, q + 1))
    return bad


def supplemented(n: int = 3, m: int = 2, alpha: Sequence | None = None) -> Algebra:
    """``alpha[k][p][i]`` is the coefficient of ``x_{i+1}`` in ``[x_{k+1}, e_{p+1}, ..., e_{p+1}]``."""
    if n < 3:
        raise BadParams("supplemented construction needs n >= 3")
    if alpha is None:
        alpha = [[[(-1) ** p if i == k else 0 for i in range(m)] for p in range(n + 1)] for k in range(m)]
    try:
        alpha = [[[_q(c) for c in cell] for cell in row] for row in alpha]
    except TypeError as exc:
        raise BadParams("alpha must be an m x (n+1) x m nested list") from exc
    if len(alpha) != m or any(len(r) != n + 1 or any(len(c) != m for c in r) for r in alpha):
        raise BadParams(f"alpha must be an {m} x {n + 1} x {m} nested list")
    bad = supplemented_condition_violations(alpha, n, m)
    if bad:
        raise BadParams("violated: sum_i alpha_kp^i alpha_iq^j = sum_i alpha_kq^i alpha_ip^j "
                        f"at (k, j, p, q) = {bad[0]}")
    prods = _simple_lie_products(n)
    for k in range(m):
        for p in range(n + 1):
            val = {n + 1 + i: c for i, c in enumerate(alpha[k][p]) if c}
            if val:
                prods.append(((n + 1 + k,) + (p,) * (n - 1), val))
    params = {"n": n, "m": m,
              "alpha": [[[format_scalar(c) for c in cell] for cell in row] for row in alpha]}
    return build_algebra(AlgebraDefinition(n, n + 1 + m, prods, [list(range(n + 1))], _names(n, m),
                                           f"supplemented(n={n},m={m})",
                                           {"family": "supplemented", "params": params}))


CATALOG = {
    "abelian": abelian,
    "chain": chain,
    "example_3_10": example_3_10,
    "example_3_11": example_3_11,
    "example_5_2": example_5_2,
    "example_5_4": example_5_4,
    "supplemented": supplemented,
}


def example_catalog(name: str, **params) -> Algebra:
    try:
        factory = CATALOG[name]
    except KeyError:
        raise BadParams(f"unknown catalog entry {name!r}; known: {sorted(CATALOG)}") from None
    try:
        return factory(**params)
    except TypeError as exc:
        raise BadParams(f"bad parameters for {name}: {exc}") from exc


def default_catalog() -> dict[str, Algebra]:
    """The reference instances used throughout the tests and demos."""
    return {
        "example_3_10": example_3_10(4, 3),
        "example_3_11": example_3_11(4, 5, 2, (1, -1, 2, 3)),
        "example_5_2": example_5_2(3, 2),
        "example_5_4": example_5_4(4, 5, 2),
        "abelian": abelian(3, 3),
        "chain": chain(4, 3),
    }


# ---------------------------------------------------------------------------
# JSON definition files
# ---------------------------------------------------------------------------
def parse_definition(text: str) -> AlgebraDefinition:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if not isinstance(data, dict):
        raise ParseError("top-level value must be an object")
    for key in ("arity", "dim"):
        if not isinstance(data.get(key), int):
            raise ParseError(f"field {key!r} must be an integer")
    dim = data["dim"]
    basis = data.get("basis") or [f"e{i + 1}" for i in range(dim)]
    if len(basis) != dim or not all(isinstance(b, str) for b in basis):
        raise ParseError(f"field 'basis' must list {dim} strings")
    blocks = data.get("skew_blocks", [])
    if not isinstance(blocks, list) or not all(
            isinstance(b, list) and all(isinstance(i, int) for i in b) for b in blocks):
        raise ParseError("field 'skew_blocks' must be a list of integer lists")
    products = []
    for pos, entry in enumerate(data.get("products", [])):
        where = f"products[{pos}]"
        if not isinstance(entry, dict):
            raise ParseError(f"{where} must be an object")
        args = entry.get("args")
        if not isinstance(args, list) or not all(isinstance(i, int) for i in args):
            raise ParseError(f"{where}.args must be a list of integers")
        value = {}
        terms = entry.get("value", [])
        if not isinstance(terms, list):
            raise ParseError(f"{where}.value must be a list of [scalar, index] pairs")
        for t_pos, term in enumerate(terms):
            if not (isinstance(term, list) and len(term) == 2 and isinstance(term[1], int)):
                raise ParseError(f"{where}.value[{t_pos}] must be [scalar, index]")
            coef = term[0]
            if isinstance(coef, int):
                c = Fraction(coef)
            elif isinstance(coef, str):
                try:
                    c = parse_scalar(coef)
                except ParseError as exc:
                    raise ParseError(f"{where}.value[{t_pos}]: {exc}") from exc
            else:
                raise ParseError(f"{where}.value[{t_pos}] scalar must be a string 'p/q'")
            value[term[1]] = value.get(term[1], ZERO) + c
        products.append((tuple(args), value))
    meta = {k: v for k, v in data.items() if k in ("family", "params")}
    return AlgebraDefinition(data["arity"], dim, products, blocks, tuple(basis),
                             str(data.get("name", "")), meta)


def load_algebra(path) -> Algebra:
    with open(path, encoding="utf-8") as fh:
        return build_algebra(parse_definition(fh.read()))


def to_definition_dict(A: Algebra) -> dict:
    """Canonical JSON-ready definition; skew blocks are kept when the tensor honours them."""
    blocks = [sorted(b) for b in A.metadata.get("skew_blocks", [])]
    blocks = [b for b in blocks if _honours_block(A, b)]
    block_sets = [set(b) for b in blocks]
    products = []
    for t in sorted(A.tensor):
        in_block = any(set(t) <= b for b in block_sets)
        if in_block and list(t) != sorted(t):
            continue
        val = A.tensor[t]
        products.append({"args": list(t),
                         "value": [[format_scalar(val[j]), j] for j in sorted(val)]})
    out = {"name": A.name, "arity": A.arity, "dim": A.dim, "basis": list(A.basis_names),
           "skew_blocks": blocks, "products": products}
    for key in ("family", "params"):
        if key in A.metadata:
            out[key] = A.metadata[key]
    return out


def _honours_block(A: Algebra, block: list) -> bool:
    bset = set(block)
    sub = {t: v for t, v in A.tensor.items() if set(t) <= bset}
    if not sub:
        return True
    probe = Algebra(A.arity, A.dim, sub)
    return is_alternating(probe, range(A.arity))


def dumps_definition(A: Algebra) -> str:
    return json.dumps(to_definition_dict(A), indent=1, sort_keys=True) + "\n"


def save_algebra(A: Algebra, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_definition(A))
