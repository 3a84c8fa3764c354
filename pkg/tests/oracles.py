"""Independent reference computations used to freeze and cross-check expected values.

Nothing here imports the package under test.
"""

from fractions import Fraction
from itertools import permutations, product


def pell_direct(n):
    a, b = 0, 1
    for _ in range(n):
        a, b = b, 2 * b + a
    return a


def gen_pell_direct(p, i, n):
    seq = {k: (0 if k <= i else 1) for k in range(1, p + 2)}
    for k in range(p + 2, n + 1):
        seq[k] = 2 * seq[k - 1] + seq[k - p - 1]
    return seq[n]


def matmul_lists(a, b):
    rows, inner, cols = len(a), len(b), len(b[0])
    out = [[0] * cols for _ in range(rows)]
    for i in range(rows):
        for j in range(cols):
            for k in range(inner):
                out[i][j] += a[i][k] * b[k][j]
    return out


def matpow_lists(a, n):
    size = len(a)
    out = [[int(i == j) for j in range(size)] for i in range(size)]
    for _ in range(n):
        out = matmul_lists(out, a)
    return out


def det_leibniz(a):
    size = len(a)
    total = 0
    for perm in permutations(range(size)):
        inversions = sum(1 for x in range(size) for y in range(x + 1, size) if perm[x] > perm[y])
        term = -1 if inversions % 2 else 1
        for r, c in enumerate(perm):
            term *= a[r][c]
        total += term
    return total


def companion_lists(p):
    size = p + 1
    a = [[0] * size for _ in range(size)]
    a[0][0] = 2
    a[0][p] += 1
    for k in range(1, size):
        a[k][k - 1] = 1
    return a


def decode_2x2(e, n):
    """Message from a p=1 code matrix via floating-free Cramer on G_n."""
    g = matpow_lists([[2, 1], [1, 0]], n)
    det = g[0][0] * g[1][1] - g[0][1] * g[1][0]
    inv = [[g[1][1] * det, -g[0][1] * det], [-g[1][0] * det, g[0][0] * det]]
    return matmul_lists(e, inv)


def admissible_repairs_brute(e, n, det_m, positions, max_entry):
    """Every repaired code matrix reachable by changing ``positions`` of ``e``.

    Enumerates messages in [1, max_entry]^4 instead of code entries: a repair
    is admissible when its message has positive entries <= max_entry, it keeps
    the undamaged code entries, and the determinant relation holds.
    """
    g = matpow_lists([[2, 1], [1, 0]], n)
    sign = -1 if n % 2 else 1
    out = set()
    rng = range(1, max_entry + 1)
    for m1, m2, m3, m4 in product(rng, rng, rng, rng):
        if m1 * m4 - m2 * m3 != det_m:
            continue
        code = matmul_lists([[m1, m2], [m3, m4]], g)
        flat = [code[0][0], code[0][1], code[1][0], code[1][1]]
        if all(flat[k - 1] == e[k - 1] for k in (1, 2, 3, 4) if k not in positions):
            assert flat[0] * flat[3] - flat[1] * flat[2] == sign * det_m
            out.add(tuple(flat))
    return out


def ratio_between(num, den, lo, hi):
    x = Fraction(num, den)
    return lo < x and (hi is None or x < hi)
