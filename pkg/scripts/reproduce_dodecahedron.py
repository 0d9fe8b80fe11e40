"""Eigenmatrices, Krein matrices and defining polynomials of the dodecahedron scheme."""
import argparse

import numpy as np

from schemekit.constructors import build
from schemekit.orders import MonomialOrder
from schemekit.polycheck import check_Q, resolve_dual_labeling
from schemekit.polystruct import poly_structure_star
from schemekit.spectrum import compute_spectrum, krein_L_matrix, snap, univariate_q_check

GRLEX = MonomialOrder.grlex(2)
DUAL_ORDER = [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (0, 3)]


def show(M):
    for row in np.asarray(M):
        cells = []
        for x in row:
            s = snap(x)
            cells.append(str(s) if abs(float(s) - float(np.real(x))) < 1e-9 else f"{float(np.real(x)):.6f}")
        print("  " + "  ".join(f"{c:>9}" for c in cells))


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    b = build("dodecahedron")
    s = compute_spectrum(b.tensor, seed=args.seed, scheme=b.scheme)
    lab = resolve_dual_labeling(s, b.dual_signatures)
    order = [lab.index(a) for a in DUAL_ORDER]
    names = ["".join(map(str, a)) for a in DUAL_ORDER]

    print("P (eigenspaces in the order", ", ".join(names) + "):")
    show(np.asarray(s.P)[order])
    print("Q:")
    show(np.asarray(s.Q)[:, order])
    for gen in ((0, 1), (1, 0)):
        print(f"L*_{''.join(map(str, gen))}:")
        show(krein_L_matrix(s, lab.index(gen), order))

    cert = check_Q(s, lab, "grlex")
    print(f"bivariate Q-polynomial (grlex): {cert.verdict}")
    print(f"univariate Q-polynomial: {univariate_q_check(s)[0]}")
    ps = poly_structure_star(s, lab, "grlex")
    for a in DUAL_ORDER[1:]:
        print(f"v*_{''.join(map(str, a))}(x, y) = {ps.v[a].format(['x', 'y'], GRLEX)}")
    print("staircase corners:", [list(c) for c in ps.staircase_corners])


if __name__ == "__main__":
    main()
