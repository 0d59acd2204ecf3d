"""
Analyse et évaluation des expressions de champs.

Grammaire (les espaces sont ignorés) :

    expression := terme (('+' | '-') terme)*
    terme      := '-' terme | rationnel ['*'] unaire | rationnel | unaire
    unaire     := 'D' ['^' entier] unaire | primaire
    primaire   := W<i> | L | alpha<k> | nu | U(i, j, a, b)
                | NO(expression, expression)
                | prod(expression, entier signé, expression)
                | '(' expression ')'

U(i, j, a, b) désigne :(∂^a W^{2i+1})(∂^b W^{2j+1}): ; L est un alias de W2.
"""

import logging
import re
from dataclasses import dataclass
from fractions import Fraction

from apps.fock.models import FieldElement
from apps.fock.services import derivative_power, generator, normal_order, nth_product, vacuum
from apps.freefield.services import nu_field
from apps.orbifold.exceptions import InvalidUIndex
from apps.orbifold.models import UIndex
from apps.orbifold.services import U

from .exceptions import NotACatalogRecipe, ParseError
from .models import Atom, Derivative, NormalOrder, Product, Scalar, Scaled, Sum, UAtom

logger = logging.getLogger(__name__)

TOKEN_PATTERN = re.compile(r'(?P<number>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<symbol>[(),^/*+-])')
ATOM_PATTERN = re.compile(r'(W\d+|L|alpha\d+|nu)$')
GENERATOR_PATTERN = re.compile(r'(W\d+|L)$')
END = 'end'


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    offset: int


class Lexer:
    """Découpe le texte en jetons et garde le jeton courant."""

    def __init__(self, text):
        self.text = text
        self.tokens = list(self._scan())
        self.position = 0

    def _scan(self):
        offset = 0
        while offset < len(self.text):
            if self.text[offset].isspace():
                offset += 1
                continue
            match = TOKEN_PATTERN.match(self.text, offset)
            if not match:
                raise ParseError(f'Caractère inattendu « {self.text[offset]} » (position {offset})',
                                 offset=offset)
            yield Token(match.lastgroup, match.group(), offset)
            offset = match.end()
        yield Token(END, '', len(self.text))

    @property
    def token(self):
        return self.tokens[self.position]

    def next(self):
        token = self.token
        if token.kind != END:
            self.position += 1
        return token

    def is_symbol(self, symbol):
        return self.token.kind == 'symbol' and self.token.text == symbol

    def accept(self, symbol):
        if self.is_symbol(symbol):
            self.next()
            return True
        return False

    def expect(self, symbol):
        if not self.accept(symbol):
            raise self.error(f'« {symbol} » attendu')

    def error(self, message):
        token = self.token
        found = token.text or 'fin du texte'
        return ParseError(f'{message}, trouvé « {found} » (position {token.offset})',
                          offset=token.offset)


def _negate(node):
    if isinstance(node, Scaled):
        return Scaled(-node.coefficient, node.operand)
    if isinstance(node, Scalar):
        return Scalar(-node.value)
    return Scaled(Fraction(-1), node)


class Parser:
    """Descente récursive sur la grammaire du module."""

    def __init__(self, text):
        self.lexer = Lexer(text)

    def parse(self):
        node = self.expression()
        self._finish()
        return node

    def parse_list(self):
        nodes = [self.expression()]
        while self.lexer.accept(','):
            nodes.append(self.expression())
        self._finish()
        return nodes

    def _finish(self):
        if self.lexer.token.kind != END:
            raise self.lexer.error("Fin d'expression attendue")

    def expression(self):
        terms = [self.term()]
        while self.lexer.is_symbol('+') or self.lexer.is_symbol('-'):
            negative = self.lexer.next().text == '-'
            term = self.term()
            terms.append(_negate(term) if negative else term)
        return terms[0] if len(terms) == 1 else Sum(tuple(terms))

    def term(self):
        if self.lexer.accept('-'):
            return _negate(self.term())
        if self.lexer.token.kind == 'number':
            coefficient = self.rational()
            if self.lexer.accept('*') or self._starts_unary():
                return Scaled(coefficient, self.unary())
            return Scalar(coefficient)
        return self.unary()

    def _starts_unary(self):
        return self.lexer.token.kind == 'name' or self.lexer.is_symbol('(')

    def rational(self):
        numerator = self.integer()
        if self.lexer.accept('/'):
            offset = self.lexer.token.offset
            denominator = self.integer()
            if denominator == 0:
                raise ParseError(f'Dénominateur nul (position {offset})', offset=offset)
            return Fraction(numerator, denominator)
        return Fraction(numerator)

    def integer(self, signed=False):
        negative = signed and self.lexer.accept('-')
        token = self.lexer.token
        if token.kind != 'number':
            raise self.lexer.error('Entier attendu')
        self.lexer.next()
        return -int(token.text) if negative else int(token.text)

    def unary(self):
        token = self.lexer.token
        if token.kind == 'name' and token.text == 'D':
            self.lexer.next()
            power = self.integer() if self.lexer.accept('^') else 1
            return Derivative(power, self.unary())
        return self.primary()

    def primary(self):
        token = self.lexer.token
        if self.lexer.accept('('):
            node = self.expression()
            self.lexer.expect(')')
            return node
        if token.kind != 'name':
            raise self.lexer.error('Terme attendu')
        self.lexer.next()
        if token.text == 'NO':
            self.lexer.expect('(')
            left = self.expression()
            self.lexer.expect(',')
            right = self.expression()
            self.lexer.expect(')')
            return NormalOrder(left, right)
        if token.text == 'prod':
            self.lexer.expect('(')
            left = self.expression()
            self.lexer.expect(',')
            n = self.integer(signed=True)
            self.lexer.expect(',')
            right = self.expression()
            self.lexer.expect(')')
            return Product(left, n, right)
        if token.text == 'U':
            self.lexer.expect('(')
            indices = [self.integer()]
            for _ in range(3):
                self.lexer.expect(',')
                indices.append(self.integer())
            self.lexer.expect(')')
            return UAtom(*indices, offset=token.offset)
        if ATOM_PATTERN.match(token.text):
            return Atom(token.text, token.offset)
        raise ParseError(f'Atome inconnu « {token.text} » (position {token.offset})',
                         offset=token.offset)


def parse_expression(text):
    """Arbre syntaxique de ``text`` (ParseError avec la position fautive)."""
    node = Parser(text).parse()
    logger.debug(f'Parsed expression: {node}')
    return node


def parse_expression_list(text):
    """Liste d'expressions séparées par des virgules de premier niveau."""
    return Parser(text).parse_list()


def _generator_name(name, algebra):
    if name == 'W2' and not algebra.has('W2'):
        return 'L'
    return name


def _u_atom(node, algebra):
    if node.i < 1 or node.j < 1:
        raise InvalidUIndex(f'Indices invalides : {node}', i=node.i, j=node.j)
    if node.i <= node.j:
        return U(node.i, node.j, node.a, node.b, algebra)
    return normal_order(generator(algebra, f'W{2 * node.i + 1}', node.a),
                        generator(algebra, f'W{2 * node.j + 1}', node.b))


def evaluate(node, algebra):
    """Élément de champ désigné par ``node`` dans ``algebra``."""
    if isinstance(node, Atom):
        if node.name == 'nu':
            return nu_field(algebra)
        return generator(algebra, _generator_name(node.name, algebra))
    if isinstance(node, UAtom):
        return _u_atom(node, algebra)
    if isinstance(node, Scalar):
        return node.value * vacuum(algebra)
    if isinstance(node, Derivative):
        return derivative_power(evaluate(node.operand, algebra), node.power)
    if isinstance(node, NormalOrder):
        return normal_order(evaluate(node.left, algebra), evaluate(node.right, algebra))
    if isinstance(node, Product):
        return nth_product(evaluate(node.left, algebra), node.n, evaluate(node.right, algebra))
    if isinstance(node, Scaled):
        return node.coefficient * evaluate(node.operand, algebra)
    total = FieldElement(algebra)
    for term in node.terms:
        total = total + evaluate(term, algebra)
    return total


def catalog_recipe(node):
    """Recette de catalogue (nom de générateur ou ``UIndex``) d'un nœud atomique."""
    if isinstance(node, Atom) and GENERATOR_PATTERN.match(node.name):
        return 'L' if node.name == 'W2' else node.name
    if isinstance(node, UAtom) and 1 <= node.i <= node.j:
        return UIndex(node.i, node.j, node.a, node.b)
    raise NotACatalogRecipe(f'Pas une recette de catalogue : {node}', expression=str(node))
