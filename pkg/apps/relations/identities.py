"""
Bibliothèque d'identités de découplage.

Chaque identité calcule ses deux membres avec le moteur de Wick et compare
exactement. Pour les identités dont seul le coefficient dominant est donné,
on vérifie ce coefficient et l'appartenance du reste à la famille annoncée.
Les coefficients affichés sont les formes corrigées ; ``erratum`` décrit
l'écart avec la forme d'origine quand il y en a un.
"""

import logging
from fractions import Fraction
from math import factorial, prod

from apps.fock.models import FieldElement
from apps.fock.services import derivative_power, embed, normal_order, nth_product, project_to_subalgebra
from apps.freefield.services import heisenberg_extension, odd_flavor_algebra
from apps.orbifold.models import UIndex
from apps.orbifold.services import U
from apps.scalars import linalg

from .exceptions import IdentityDomainError, UnknownIdentity
from .models import IdentityReport

logger = logging.getLogger(__name__)

IDENTITIES = {}


def identity(name, params=(), summary=''):
    """Enregistre une fonction de vérification sous ``name``."""
    def register(function):
        IDENTITIES[name] = (tuple(params), function, summary)
        return function
    return register


def list_identities():
    return [{'name': name, 'params': list(params), 'summary': summary}
            for name, (params, _function, summary) in sorted(IDENTITIES.items())]


def _require(condition, name, params, rule):
    if not condition:
        raise IdentityDomainError(f'{name} exige {rule}, reçu {params}', identity=name)


def _u(i, j, a, b, algebra, power=0):
    """(libellé, ∂^power U^{2i+1,2j+1}_{a,b})."""
    index = UIndex(i, j, a, b)
    element = derivative_power(U(i, j, a, b, algebra), power)
    label = index.label if power == 0 else f'D^{power} {index.label}'
    return label, element


def _solve(lhs, family):
    elements = [element for _label, element in family]
    solution = linalg.solve_in_columns([x.terms for x in elements], lhs.terms)
    if solution is None:
        return None
    return tuple(solution.get(position, Fraction(0)) for position in range(len(elements)))


def _combine(algebra, family, coefficients):
    total = FieldElement(algebra)
    for (_label, element), coefficient in zip(family, coefficients):
        total = total + Fraction(coefficient) * element
    return total


def _exact(name, params, lhs, family, displayed, erratum=''):
    """lhs = Σ displayed[k]·family[k], comparé terme à terme."""
    displayed = tuple(Fraction(value) for value in displayed)
    rhs = _combine(lhs.algebra, family, displayed)
    return IdentityReport(name, dict(params), lhs == rhs, lhs, rhs,
                          tuple(label for label, _element in family),
                          _solve(lhs, family), displayed, erratum)


def _leading(name, params, lhs, family, leading, erratum=''):
    """Coefficient ``leading`` sur family[0], reste dans la famille family[1:]."""
    leading = Fraction(leading)
    computed = _solve(lhs, family)
    if computed is None:
        rhs = _combine(lhs.algebra, family[:1], (leading,))
    else:
        rhs = _combine(lhs.algebra, family, (leading,) + computed[1:])
    return IdentityReport(name, dict(params), lhs == rhs, lhs, rhs,
                          tuple(label for label, _element in family),
                          computed, (leading,), erratum)


@identity('wt14', summary=':U33_00 U33_11: − :U33_01 U33_01: en poids 14')
def _wt14(params):
    algebra = odd_flavor_algebra(1)
    lhs = (normal_order(U(1, 1, 0, 0, algebra), U(1, 1, 1, 1, algebra))
           - normal_order(U(1, 1, 0, 1, algebra), U(1, 1, 0, 1, algebra)))
    family = [_u(1, 1, 0, 8 - 2 * t, algebra, 2 * t) for t in range(5)]
    displayed = (Fraction(-19, 4032), Fraction(23, 1440), Fraction(-23, 576),
                 Fraction(23, 480), Fraction(-391, 40320))
    return _exact('wt14', params, lhs, family, displayed)


@identity('wt16', summary=':U33_00 U33_22: − :U33_02 U33_02: en poids 16')
def _wt16(params):
    algebra = odd_flavor_algebra(1)
    lhs = (normal_order(U(1, 1, 0, 0, algebra), U(1, 1, 2, 2, algebra))
           - normal_order(U(1, 1, 0, 2, algebra), U(1, 1, 0, 2, algebra)))
    family = [_u(1, 1, 0, 10 - 2 * t, algebra, 2 * t) for t in range(6)]
    displayed = (Fraction(-1, 7200), Fraction(-1, 72), Fraction(7, 96),
                 Fraction(-7, 32), Fraction(17, 64), Fraction(-31, 576))
    return _exact('wt16', params, lhs, family, displayed)


@identity('u22_rewrite', summary='U33_22 dans la base ∂^{2t} U33_{0,4−2t}')
def _u22_rewrite(params):
    algebra = odd_flavor_algebra(1)
    lhs = U(1, 1, 2, 2, algebra)
    family = [_u(1, 1, 0, 4 - 2 * t, algebra, 2 * t) for t in range(3)]
    return _exact('u22_rewrite', params, lhs, family, (1, -2, Fraction(1, 2)),
                  'dernier terme affiché ½∂U^{3,3}_{0,0}, de poids 7 : '
                  'le terme de poids 10 est ½∂⁴U^{3,3}_{0,0}')


@identity('raise33_3', ('a',), '(U33_00)_(3) U33_{0,2a}, coefficient dominant')
def _raise33_3(params):
    a = params['a']
    _require(a >= 0, 'raise33_3', params, 'a >= 0')
    algebra = odd_flavor_algebra(1)
    lhs = nth_product(U(1, 1, 0, 0, algebra), 3, U(1, 1, 0, 2 * a, algebra))
    family = [_u(1, 1, 0, 2 * a + 2 - 2 * t, algebra, 2 * t) for t in range(a + 2)]
    return _leading('raise33_3', params, lhs, family, Fraction((4 + a) * (15 + 8 * a + 4 * a * a), 30))


@identity('raise33_1', ('m',), '(U33_00)_(1) U33_{0,2m}, coefficient dominant')
def _raise33_1(params):
    m = params['m']
    _require(m >= 0, 'raise33_1', params, 'm >= 0')
    algebra = odd_flavor_algebra(1)
    lhs = nth_product(U(1, 1, 0, 0, algebra), 1, U(1, 1, 0, 2 * m, algebra))
    family = [_u(1, 1, 0, 2 * m + 4 - 2 * t, algebra, 2 * t) for t in range(m + 3)]
    return _leading('raise33_1', params, lhs, family, Fraction(5 + m, 30))


@identity('raise_cross_4', ('i', 'a'), '(U33_00)_(4) U^{3,2i+1}_{a,0}')
def _raise_cross_4(params):
    i, a = params['i'], params['a']
    _require(i >= 2 and a >= 0, 'raise_cross_4', params, 'i >= 2, a >= 0')
    algebra = odd_flavor_algebra(i)
    lhs = nth_product(U(1, 1, 0, 0, algebra), 4, U(1, i, a, 0, algebra))
    family = [_u(1, i, a + 1, 0, algebra)]
    return _exact('raise_cross_4', params, lhs, family, (Fraction(prod(range(2 + a, 6 + a)), 60),))


@identity('square_5', ('i',), '(U^{3,2i+1}_00)_(5) U^{3,2i+1}_00')
def _square_5(params):
    i = params['i']
    _require(i >= 2, 'square_5', params, 'i >= 2')
    algebra = odd_flavor_algebra(i)
    lhs = nth_product(U(1, i, 0, 0, algebra), 5, U(1, i, 0, 0, algebra))
    family = [_u(i, i, 0, 0, algebra), _u(1, 1, 4 * i - 4, 0, algebra)]
    return _exact('square_5', params, lhs, family, (1, Fraction(1, factorial(4 * i - 4))))


@identity('cross_5', ('i', 'j', 'a'), '(U^{3,2i+1}_00)_(5) U^{3,2j+1}_{a,0}')
def _cross_5(params):
    i, j, a = params['i'], params['j'], params['a']
    _require(2 <= i < j and a >= 0, 'cross_5', params, '2 <= i < j, a >= 0')
    algebra = odd_flavor_algebra(j)
    lhs = nth_product(U(1, i, 0, 0, algebra), 5, U(1, j, a, 0, algebra))
    family = [_u(i, j, a, 0, algebra)]
    return _exact('cross_5', params, lhs, family, (Fraction(prod(range(1 + a, 6 + a)), 120),))


def odd_coefficient(r):
    """Coefficient de U^{3,k}_{6+r,0} dans :U33_00 U^{3,k}_{r,0}: − :U33_0r U^{3,k}_00:."""
    return (Fraction(1, 60 * (6 + r)) - Fraction(1, 720)
            - Fraction((-1) ** r, 120 * (6 + r)))


def _leading_modulo(name, params, lhs, family, leading, erratum=''):
    """lhs − leading·family[0] dans l'espace engendré par family[1:].

    Pour une famille libre c'est la vérification de ``_leading`` ; pour
    i = j et a + 2 impair, U^{3,3}_{0,a+2} est lui-même une dérivée et seul
    le reste est contraint.
    """
    leading = Fraction(leading)
    head = _combine(lhs.algebra, family[:1], (leading,))
    rest = _solve(lhs - head, family[1:])
    if rest is None:
        rhs, computed = head, None
    else:
        rhs, computed = head + _combine(lhs.algebra, family[1:], rest), (leading,) + rest
    return IdentityReport(name, dict(params), lhs == rhs, lhs, rhs,
                          tuple(label for label, _element in family),
                          computed, (leading,), erratum)


def _odd(name, params, r, displayed, erratum=''):
    i = params['i']
    _require(i >= 2 and r >= 1, name, params, 'i >= 2, r >= 1')
    algebra = odd_flavor_algebra(i)
    lhs = (normal_order(U(1, 1, 0, 0, algebra), U(1, i, r, 0, algebra))
           - normal_order(U(1, 1, 0, r, algebra), U(1, i, 0, 0, algebra)))
    family = [_u(1, i, 6 + r, 0, algebra)]
    return _exact(name, params, lhs, family, (displayed,), erratum)


@identity('odd7', ('i',), 'relation de poids 2i+11 pour U^{3,2i+1}_{7,0}')
def _odd7(params):
    return _odd('odd7', params, 1, Fraction(11, 5040),
                'champ affiché U^{3,2i+1}_{0,7} : le membre de droite est U^{3,2i+1}_{7,0}')


@identity('odd8', ('i',), 'relation de poids 2i+12 pour U^{3,2i+1}_{8,0}')
def _odd8(params):
    return _odd('odd8', params, 2, Fraction(-1, 2880),
                'coefficient affiché +1/2880 sur U^{3,2i+1}_{0,8} : '
                'le moteur donne −1/2880 sur U^{3,2i+1}_{8,0}')


@identity('odd_r', ('i', 'r'), 'forme générale de odd7 et odd8 pour r >= 1')
def _odd_r(params):
    return _odd('odd_r', params, params['r'], odd_coefficient(params['r']))


@identity('cross_square', ('i', 'j', 'r'), ':U^{ii}_{0,r} U^{jj}_00: − :U^{ij}_{r,0} U^{ij}_00:')
def _cross_square(params):
    i, j, r = params['i'], params['j'], params['r']
    _require(1 <= i < j and r >= 0, 'cross_square', params, '1 <= i < j, r >= 0')
    algebra = odd_flavor_algebra(j)
    lhs = (normal_order(U(i, i, 0, r, algebra), U(j, j, 0, 0, algebra))
           - normal_order(U(i, j, r, 0, algebra), U(i, j, 0, 0, algebra)))
    family = [_u(i, i, 0, 4 * j + 2 + r, algebra), _u(j, j, 0, 4 * i + 2 + r, algebra)]
    displayed = (Fraction(-1, factorial(4 * j + 2)),
                 Fraction(-(-1) ** r, factorial(4 * i + 1) * (4 * i + 2 + r)))
    return _exact('cross_square', params, lhs, family, displayed,
                  'coefficient affiché −1/(2(2j+1)!) : le moteur donne −1/(4j+2)! ; '
                  'le second produit porte U^{2i+1,2j+1}_{r,0}')


@identity('lastone', ('i', 'j', 'r'), ':U^{3,2i+1}_{0,r} U^{3,2j+1}_00: − :U33_00 U^{2i+1,2j+1}_{r,0}:')
def _lastone(params):
    i, j, r = params['i'], params['j'], params['r']
    _require(2 <= i < j and r >= 0, 'lastone', params, '2 <= i < j, r >= 0')
    algebra = odd_flavor_algebra(j)
    lhs = (normal_order(U(1, i, 0, r, algebra), U(1, j, 0, 0, algebra))
           - normal_order(U(1, 1, 0, 0, algebra), U(i, j, r, 0, algebra)))
    family = [_u(i, j, 6 + r, 0, algebra)]
    return _exact('lastone', params, lhs, family, (Fraction(1, 720),),
                  'indice affiché U^{2i+1,2j+1}_{4,0} dans le second produit : '
                  "l'identité vaut avec U^{2i+1,2j+1}_{r,0}")


@identity('nu_raising', ('i', 'a'), 'ν_(1) U^{3,2i+1}_{0,a} via l\'extension de Heisenberg')
def _nu_raising(params):
    i, a = params['i'], params['a']
    _require(i >= 1 and a >= 0, 'nu_raising', params, 'i >= 1, a >= 0')
    _target, embedding, nu = heisenberg_extension(i)
    source = embedding.source
    image = embed(U(1, i, 0, a, source), embedding)
    lhs = project_to_subalgebra(nth_product(nu, 1, image), embedding)
    family = [_u(1, i, 0, a + 2 - b, source, b) for b in range(a + 3)]
    return _leading_modulo('nu_raising', params, lhs, family, 12 + 2 * a + 4 * i)


def verify_identity(name, params=None):
    """Vérifie l'identité ``name`` ; ``params`` est un dictionnaire d'entiers."""
    if name not in IDENTITIES:
        raise UnknownIdentity(f'Identité inconnue : {name}', identity=name)
    expected, function, _summary = IDENTITIES[name]
    params = dict(params or {})
    unknown = set(params) - set(expected)
    missing = set(expected) - set(params)
    if unknown or missing:
        raise IdentityDomainError(
            f"{name} attend les paramètres ({', '.join(expected)}), reçu {sorted(params)}",
            identity=name,
        )
    try:
        params = {key: int(value) for key, value in params.items()}
    except (TypeError, ValueError):
        raise IdentityDomainError(f'Paramètres non entiers pour {name} : {params}', identity=name)
    report = function(params)
    logger.info(f'Identity {name} {params}: holds={report.holds}')
    return report
