"""F_p and F_{p^2} scalars for the structural isotropic solver."""
from __future__ import annotations


class PrimeField:
    """Integers mod p with a precomputed square-root table."""

    def __init__(self, p: int):
        self.p = p
        self._roots = {}
        for x in range(p):
            self._roots.setdefault(x * x % p, x)
        self.name = f"F_{p}"

    def embed(self, a: int):
        return a % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def is_zero(self, a) -> bool:
        return a % self.p == 0

    def sqrt(self, a: int):
        """A square root of the F_p element a, or None."""
        return self._roots.get(a % self.p)

    def is_square(self, a: int) -> bool:
        return a % self.p in self._roots

    def key(self, a):
        return a % self.p


class QuadraticExtension(PrimeField):
    """F_p[s]/(s^2 - nu) for a non-residue nu; elements are pairs (a, b)."""

    def __init__(self, p: int):
        super().__init__(p)
        self.nu = next(x for x in range(2, p) if x not in self._roots)
        self.name = f"F_{p}^2"

    def embed(self, a: int):
        return (a % self.p, 0)

    def add(self, a, b):
        return ((a[0] + b[0]) % self.p, (a[1] + b[1]) % self.p)

    def sub(self, a, b):
        return ((a[0] - b[0]) % self.p, (a[1] - b[1]) % self.p)

    def mul(self, a, b):
        p = self.p
        return ((a[0] * b[0] + self.nu * a[1] * b[1]) % p, (a[0] * b[1] + a[1] * b[0]) % p)

    def inv(self, a):
        p = self.p
        norm = (a[0] * a[0] - self.nu * a[1] * a[1]) % p
        if norm == 0:
            raise ZeroDivisionError("inverse of zero")
        ni = pow(norm, -1, p)
        return (a[0] * ni % p, -a[1] * ni % p)

    def is_zero(self, a) -> bool:
        return a[0] % self.p == 0 and a[1] % self.p == 0

    def sqrt(self, a: int):
        """Every element of F_p has a square root in F_{p^2}."""
        a %= self.p
        r = self._roots.get(a)
        if r is not None:
            return (r, 0)
        r = self._roots[a * pow(self.nu, -1, self.p) % self.p]
        return (0, r)

    def is_square(self, a: int) -> bool:
        return True

    def key(self, a):
        return (a[0] % self.p, a[1] % self.p)
