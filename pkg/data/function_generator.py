"""Generate random admissible g(z) for property tests."""

import random
from fractions import Fraction
from typing import List

from src.ding_iohara import AAlphaModule
from src.ratfunc import CanonicalG, RationalFn


def _times_linear(coeffs: List[Fraction], root: Fraction) -> List[Fraction]:
    """coeffs(z) * (z - root), ascending coefficients."""
    out = [Fraction(0)] * (len(coeffs) + 1)
    for k, c in enumerate(coeffs):
        out[k] -= root * c
        out[k + 1] += c
    return out


class RationalFunctionGenerator:
    """Seeded source of admissible g and of sample A[alpha]-modules.

    Every g is sign * z^shift * prod (z - r) / (1 - r z) over rational roots r
    other than 0 and +-1, so g(z) g(1/z) = 1 holds by construction.
    """

    def __init__(self, seed: int = 0):
        self.rng = random.Random(seed)
        self.numerators = [-5, -4, -3, -2, 2, 3, 4, 5]
        self.denominators = [1, 1, 1, 2, 3]

    def _generate_root(self, taken: List[Fraction]) -> Fraction:
        """A rational root other than 0 and +-1 whose reciprocal is not already used."""
        while True:
            root = Fraction(self.rng.choice(self.numerators), self.rng.choice(self.denominators))
            if root in (0, 1, -1) or root in taken or 1 / root in taken:
                continue
            return root

    def generate_canonical(self, max_roots: int = 3, max_shift: int = 0, sign: int = None) -> CanonicalG:
        """Random sign * z^l * p(z) / ptilde(z)."""
        n = self.rng.randint(0, max_roots)
        roots: List[Fraction] = []
        for _ in range(n):
            roots.append(self._generate_root(roots))
        p = [Fraction(1)]
        for r in roots:
            p = _times_linear(p, r)
        if sign is None:
            sign = self.rng.choice([1, -1])
        l = self.rng.randint(-max_shift, max_shift)
        return CanonicalG(sign, l, tuple(p), tuple(sorted(roots)))

    def generate_g(self, **kwargs) -> RationalFn:
        return self.generate_canonical(**kwargs).reconstruct()

    def generate_u_lambda(self) -> AAlphaModule:
        lam = Fraction(self.rng.choice(self.numerators), self.rng.choice(self.denominators))
        return AAlphaModule.u_lambda(lam)

    def generate_test_functions(self, count: int = 1, **kwargs) -> List[RationalFn]:
        """Generate a list of admissible g.

        Args:
            count: Number of functions to generate
            **kwargs: Passed to generate_canonical

        Returns:
            List of RationalFn
        """
        return [self.generate_g(**kwargs) for _ in range(count)]


def generate_test_functions(count: int = 5, seed: int = 0, **kwargs) -> List[RationalFn]:
    """Generate ``count`` admissible g with a fixed seed."""
    return RationalFunctionGenerator(seed).generate_test_functions(count, **kwargs)
