"""
Types scalaires de l'application scalars.

Aucun de ces objets n'est persisté : ce sont des valeurs immuables.

- ``Rational`` est ``fractions.Fraction`` (toujours réduite, dénominateur > 0).
- ``ParamRational`` est une fraction rationnelle à coefficients entiers en
  ψ, c, λ, construite sur les polynômes de sympy.
- ``ExtScalar`` adjoint les racines formelles n_i avec n_i² = (4i+1)!.
"""

from fractions import Fraction
from math import factorial

from sympy import Poly, Symbol, ZZ, QQ, sympify, together

from .exceptions import DivisionByZero, UnknownParameter

Rational = Fraction

PSI = Symbol('psi')
C = Symbol('c')
LAMBDA = Symbol('lambda')

# Paramètres autorisés, par nom public
PARAMETERS = {'psi': PSI, 'c': C, 'lambda': LAMBDA}

# Ordre des générateurs pour grlex : λ > c > ψ
GENERATOR_ORDER = (LAMBDA, C, PSI)


class ParamRational:
    """Fraction rationnelle réduite en (ψ, c, λ).

    Forme canonique : numérateur et dénominateur dans Z[gens actifs], sans
    facteur commun ni contenu commun, coefficient dominant du dénominateur
    positif pour l'ordre grlex avec ψ < c < λ. Deux valeurs égales ont donc
    exactement la même représentation.
    """

    __slots__ = ('num', 'den')

    def __init__(self, numerator, denominator=1):
        num_expr, den_expr = sympify(numerator), sympify(denominator)
        if den_expr == 0:
            raise DivisionByZero(f'Dénominateur nul : ({numerator})/({denominator})')
        num_expr, den_expr = together(num_expr / den_expr).as_numer_denom()

        symbols = num_expr.free_symbols | den_expr.free_symbols
        unknown = symbols - set(PARAMETERS.values())
        if unknown:
            raise UnknownParameter(f"Paramètres inconnus : {', '.join(sorted(map(str, unknown)))}")
        gens = [gen for gen in GENERATOR_ORDER if gen in symbols] or [PSI]

        num = Poly(num_expr, *gens, domain=QQ)
        den = Poly(den_expr, *gens, domain=QQ)
        if den.is_zero:
            raise DivisionByZero(f'Dénominateur nul : ({numerator})/({denominator})')
        self.num, self.den = self._canonical(num, den)

    @staticmethod
    def _canonical(num, den):
        if num.is_zero:
            return num.set_domain(ZZ), Poly(1, *den.gens, domain=ZZ)

        common = num.gcd(den)
        num = num.exquo(common)
        den = den.exquo(common)

        num_scale, num = num.clear_denoms(convert=True)
        den_scale, den = den.clear_denoms(convert=True)
        # num/den = (num'/a)/(den'/b) = (num'·b)/(den'·a)
        num = num.mul_ground(int(den_scale))
        den = den.mul_ground(int(num_scale))

        content = ZZ.gcd(num.content(), den.content())
        if content != 1:
            num = num.exquo_ground(content)
            den = den.exquo_ground(content)

        if den.LC(order='grlex') < 0:
            num, den = -num, -den
        return num, den

    @classmethod
    def from_expression(cls, text):
        """Construit une fraction à partir d'un texte en psi, c, lambda."""
        from .services import parse_parameter_expression

        return cls(parse_parameter_expression(text))

    @property
    def gens(self):
        return tuple(str(gen) for gen in self.num.gens)

    def as_expr(self):
        return self.num.as_expr() / self.den.as_expr()

    def is_zero(self):
        return self.num.is_zero

    def is_constant(self):
        return self.num.is_ground and self.den.is_ground

    def constant_value(self):
        """Valeur rationnelle d'une fraction constante."""
        return Fraction(int(self.num.LC()), int(self.den.LC()))

    def substitute(self, mapping):
        """Remplace des paramètres par d'autres fractions (composition exacte)."""
        replacements = {}
        for name, value in mapping.items():
            if name not in PARAMETERS:
                raise UnknownParameter(f'Paramètre inconnu : {name}')
            replacements[PARAMETERS[name]] = value.as_expr() if isinstance(value, ParamRational) \
                else sympify(value)
        num = self.num.as_expr().subs(replacements)
        den = self.den.as_expr().subs(replacements)
        return ParamRational(num, den)

    def _coerce(self, other):
        if isinstance(other, ParamRational):
            return other
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            return ParamRational(sympify(other.numerator), sympify(other.denominator))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return ParamRational(self.as_expr() + other.as_expr())

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return ParamRational(self.as_expr() - other.as_expr())

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return ParamRational(self.num.as_expr() * other.num.as_expr(),
                             self.den.as_expr() * other.den.as_expr())

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.is_zero():
            raise DivisionByZero('Division par la fraction nulle')
        return ParamRational(self.num.as_expr() * other.den.as_expr(),
                             self.den.as_expr() * other.num.as_expr())

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other / self

    def __neg__(self):
        return ParamRational(-self.num.as_expr(), self.den.as_expr())

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.num.as_expr() == other.num.as_expr() and self.den.as_expr() == other.den.as_expr()

    def __hash__(self):
        if self.is_constant():
            return hash(self.constant_value())
        return hash((self.num.as_expr(), self.den.as_expr()))

    def __str__(self):
        num = str(self.num.as_expr())
        if self.den.is_ground and self.den.LC() == 1:
            return num
        return f'({num})/({self.den.as_expr()})'

    def __repr__(self):
        return f'ParamRational({self})'


def symbol_square(index):
    """Carré déclaré du symbole n_i : (4i+1)!."""
    return factorial(4 * index + 1)


class ExtScalar:
    """Élément de Q[n_1, n_2, ...] avec n_i² = (4i+1)!.

    Stocké comme dictionnaire {frozenset d'indices: Fraction} ; chaque clé
    représente le produit des symboles distincts qu'elle contient.
    """

    __slots__ = ('terms',)

    def __init__(self, terms=None):
        cleaned = {}
        for key, value in (terms or {}).items():
            value = Fraction(value)
            if value:
                cleaned[frozenset(key)] = value
        self.terms = cleaned

    @classmethod
    def symbol(cls, index):
        """Le symbole n_index."""
        return cls({frozenset([index]): Fraction(1)})

    @classmethod
    def inverse_symbol(cls, index):
        """1/n_index = n_index/(4·index+1)!."""
        return cls({frozenset([index]): Fraction(1, symbol_square(index))})

    @classmethod
    def coerce(cls, value):
        if isinstance(value, ExtScalar):
            return value
        if isinstance(value, (int, Fraction)):
            return cls({frozenset(): Fraction(value)})
        return NotImplemented

    def is_rational(self):
        return all(not key for key in self.terms)

    def to_rational(self):
        """Plongement sans perte dans les rationnels (``None`` si impossible)."""
        if not self.is_rational():
            return None
        return self.terms.get(frozenset(), Fraction(0))

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        other = ExtScalar.coerce(other)
        if other is NotImplemented:
            return other
        result = dict(self.terms)
        for key, value in other.terms.items():
            result[key] = result.get(key, Fraction(0)) + value
        return ExtScalar(result)

    __radd__ = __add__

    def __neg__(self):
        return ExtScalar({key: -value for key, value in self.terms.items()})

    def __sub__(self, other):
        other = ExtScalar.coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = ExtScalar.coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = ExtScalar.coerce(other)
        if other is NotImplemented:
            return other
        result = {}
        for left_key, left in self.terms.items():
            for right_key, right in other.terms.items():
                value = left * right
                for index in left_key & right_key:
                    value *= symbol_square(index)
                key = left_key ^ right_key
                result[key] = result.get(key, Fraction(0)) + value
        return ExtScalar(result)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise DivisionByZero('Division de ExtScalar par zéro')
            return ExtScalar({key: value / other for key, value in self.terms.items()})
        return NotImplemented

    def __eq__(self, other):
        other = ExtScalar.coerce(other)
        if other is NotImplemented:
            return other
        return self.terms == other.terms

    def __hash__(self):
        rational = self.to_rational()
        if rational is not None:
            return hash(rational)
        return hash(frozenset(self.terms.items()))

    def __str__(self):
        if not self.terms:
            return '0'
        parts = []
        for key in sorted(self.terms, key=lambda k: (len(k), sorted(k))):
            value = self.terms[key]
            symbols = '*'.join(f'n{index}' for index in sorted(key))
            if not symbols:
                parts.append(str(value))
            else:
                parts.append(f'{value}*{symbols}')
        return ' + '.join(parts)

    def __repr__(self):
        return f'ExtScalar({self})'
