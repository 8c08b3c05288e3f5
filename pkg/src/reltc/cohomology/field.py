"""The two coefficient fields: GF(2) and the rationals."""
from __future__ import annotations

from fractions import Fraction


class Field:
    name = "?"

    def coerce(self, x):
        raise NotImplementedError

    def sign(self, exponent: int):
        """``(-1) ** exponent`` in this field."""
        return self.coerce(-1 if exponent % 2 else 1)

    def __repr__(self):
        return f"Field({self.name})"

    def __reduce__(self):
        return (field_by_name, (self.name,))


class _GF2(Field):
    name = "gf2"
    zero = 0
    one = 1

    def coerce(self, x):
        if isinstance(x, Fraction):
            if x.denominator % 2 == 0:
                raise ValueError(f"{x} has no image in GF(2)")
            x = x.numerator
        if int(x) != x:
            raise ValueError(f"{x!r} is not an integer")
        return int(x) % 2

    def sign(self, exponent: int):
        return 1


class _Rational(Field):
    name = "rational"
    zero = Fraction(0)
    one = Fraction(1)

    def coerce(self, x):
        return Fraction(x)


GF2 = _GF2()
QQ = _Rational()


def field_by_name(name: str) -> Field:
    if name in ("gf2", "GF2", "Z/2"):
        return GF2
    if name in ("rational", "Q", "QQ"):
        return QQ
    raise ValueError(f"unsupported field {name!r}")
