"""Tabulate the smallest number of generators admitting a P- (and Q-) labeling for small schemes."""
import argparse

from schemekit.constructors import build
from schemekit.polycheck import essential_variate_P, essential_variate_Q
from schemekit.spectrum import compute_spectrum, univariate_p_check, univariate_q_check

FAMILIES = [
    "k4", "c6", "dodecahedron", "hamming:3,2", "johnson:6,3",
    "power(k2,2)", "power(k2,3)", "power(k3,2)", "product(k2,c5)",
    "extension(k3,2)", "extension(c5,2)", "composition(k3,c5)",
    "genjohnson(k3,3,2)", "attenuated:2,2,1,1", "attenuated:2,3,2,1", "z4",
]


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("families", nargs="*")
    parser.add_argument("--order", default="grlex")
    parser.add_argument("--ell-max", type=int, default=3)
    parser.add_argument("--tol", type=float, default=1e-8)
    args = parser.parse_args()

    print(f"{'family':<22} {'|X|':>5} {'d':>3} {'uniP':>5} {'uniQ':>5} {'ell_P':>6} {'ell_Q':>6}")
    for text in args.families or FAMILIES:
        b = build(text)
        t = b.tensor
        s = compute_spectrum(t, tol=args.tol)
        ep = essential_variate_P(t, args.order, args.ell_max)
        eq = essential_variate_Q(s, args.order, args.ell_max, args.tol)
        up = univariate_p_check(t)[0]
        uq = univariate_q_check(s, symmetric=b.scheme.is_symmetric)[0]
        print(f"{text:<22} {b.scheme.size:>5} {b.scheme.class_count:>3} {str(up):>5} {str(uq):>5} "
              f"{str(ep if ep is not None else '-'):>6} {str(eq if eq is not None else '-'):>6}")


if __name__ == "__main__":
    main()
