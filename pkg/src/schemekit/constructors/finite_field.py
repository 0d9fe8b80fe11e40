"""Linear algebra over a prime field F_p with rows stored as integer tuples."""
import itertools

from sympy import isprime


def check_prime(q):
    if not isprime(int(q)):
        raise ValueError(f"q={q} must be prime (only prime fields are supported)")


def rref_mod(rows, p):
    """Reduced row echelon form over F_p; zero rows dropped. Returns a tuple of tuples."""
    m = [[x % p for x in r] for r in rows]
    if not m:
        return ()
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], -1, p)
        m[r] = [(x * inv) % p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return tuple(tuple(row) for row in m[:r])


def rank_mod(rows, p):
    return len(rref_mod(rows, p))


def rref_matrices(m, n, p):
    """All m x n full-rank matrices in reduced row echelon form over F_p."""
    out = []
    for pivots in itertools.combinations(range(n), m):
        # free entries: row r, columns after its pivot that are not pivot columns
        free = [(r, c) for r in range(m) for c in range(pivots[r] + 1, n) if c not in pivots]
        for values in itertools.product(range(p), repeat=len(free)):
            M = [[0] * n for _ in range(m)]
            for r, c in enumerate(pivots):
                M[r][c] = 1
            for (r, c), v in zip(free, values):
                M[r][c] = v
            out.append(tuple(tuple(row) for row in M))
    return out


def gaussian_binomial(n, k, q):
    if k < 0 or k > n:
        return 0
    num, den = 1, 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def q_number(n, q):
    """[n]_q = (q^n - 1)/(q - 1)."""
    if n < 0:
        raise ValueError("q-numbers are only used for nonnegative n")
    return sum(q**i for i in range(n))
