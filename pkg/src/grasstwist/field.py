"""
Exact scalar arithmetic.

Two backends share one small interface: a prime field F_p (values are plain
ints in [0, p)) and the rationals (values are fractions.Fraction).  Code that
evaluates identities is written against the interface, so the same routine
runs modularly for speed or rationally when exactness of a fixture matters.
"""

import os
import random
from fractions import Fraction

DEFAULT_PRIME = (1 << 61) - 1
DEFAULT_SEED = 20240917


def is_probable_prime(p, rounds=24):
    """Miller-Rabin; deterministic witnesses cover every p < 3.3e24."""
    if p < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for q in small:
        if p % q == 0:
            return p == q
    d, s = p - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    witnesses = list(small)
    rng = random.Random(p)
    while len(witnesses) < rounds:
        witnesses.append(rng.randrange(2, p - 1))
    for a in witnesses:
        x = pow(a, d, p)
        if x in (1, p - 1):
            continue
        for _ in range(s - 1):
            x = x * x % p
            if x == p - 1:
                break
        else:
            return False
    return True


def env_prime():
    """The prime from GRASSTWIST_PRIME, or the default 2^61 - 1."""
    raw = os.environ.get("GRASSTWIST_PRIME")
    if not raw:
        return DEFAULT_PRIME
    p = int(raw, 0)
    if not is_probable_prime(p):
        raise ValueError("GRASSTWIST_PRIME=%s is not prime" % raw)
    return p


def env_seed():
    raw = os.environ.get("GRASSTWIST_SEED")
    return int(raw) if raw else DEFAULT_SEED


class PrimeField:
    """The field Z/pZ with elements represented as ints in [0, p)."""

    exact = False

    def __init__(self, p=None):
        if p is None:
            p = env_prime()
        if not is_probable_prime(p):
            raise ValueError("%d is not prime" % p)
        self.p = p

    def __repr__(self):
        return "PrimeField(%d)" % self.p

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("F", self.p))

    zero = 0
    one = 1

    def __call__(self, x):
        """Coerce an int (or Fraction) into the field."""
        if isinstance(x, Fraction):
            return self.div(x.numerator % self.p, x.denominator % self.p)
        return int(x) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero in F_%d" % self.p)
        return pow(a, self.p - 2, self.p)

    def div(self, a, b):
        return a * self.inv(b) % self.p

    def pow(self, a, e):
        if e < 0:
            return pow(self.inv(a), -e, self.p)
        return pow(a, e, self.p)

    def is_zero(self, a):
        return a % self.p == 0

    def random(self, rng):
        return rng.randrange(self.p)

    def prod(self, xs):
        r = 1
        for x in xs:
            r = r * x % self.p
        return r


class RationalField:
    """The rationals, exactly, via fractions.Fraction."""

    exact = True
    zero = Fraction(0)
    one = Fraction(1)

    def __init__(self, bound=50):
        # random() draws integers in [-bound, bound]
        self.bound = bound

    def __repr__(self):
        return "RationalField()"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")

    def __call__(self, x):
        return Fraction(x)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero in Q")
        return 1 / Fraction(a)

    def div(self, a, b):
        return Fraction(a) * self.inv(b)

    def pow(self, a, e):
        if e < 0:
            return self.inv(a) ** (-e)
        return Fraction(a) ** e

    def is_zero(self, a):
        return a == 0

    def random(self, rng):
        return Fraction(rng.randint(-self.bound, self.bound))

    def prod(self, xs):
        r = Fraction(1)
        for x in xs:
            r *= x
        return r


def default_field():
    return PrimeField(env_prime())


def make_rng(seed=None):
    """A private random.Random; threads determinism explicitly."""
    return random.Random(env_seed() if seed is None else seed)
