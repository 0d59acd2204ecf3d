"""Tests de l'application freefield."""

from fractions import Fraction

from django.test import SimpleTestCase

from apps.fock.services import generator, nth_product, vacuum

from .exceptions import (
    DuplicateGenerator, InvalidFamilyParameter, InvalidPairing, TooSmall, UnknownGenerator,
)
from .models import EVEN, ODD, GeneratorSpec
from .serializers import FreeFieldSpecSerializer
from .services import (
    heisenberg_extension, make_spec, make_standard_algebra, odd_flavors, rescale, spec_hash,
    tensor_product, validate_algebra, wfree_sln,
)


class StandardFamilyTests(SimpleTestCase):

    def test_heisenberg(self):
        spec = make_standard_algebra('O_ev', 3, 2)
        self.assertEqual([g.weight for g in spec.generators], [1, 1, 1])
        self.assertTrue(all(g.parity == EVEN for g in spec.generators))
        self.assertEqual(spec.pair(0, 0), 1)
        self.assertEqual(spec.pair(0, 1), 0)

    def test_beta_gamma(self):
        spec = make_standard_algebra('S_ev', 2, 1)
        self.assertEqual([g.name for g in spec.generators], ['a1', 'b1', 'a2', 'b2'])
        self.assertEqual(spec.generators[0].weight, Fraction(1, 2))
        self.assertEqual(spec.pair(0, 1), 1)
        self.assertEqual(spec.pair(1, 0), -1)

    def test_free_fermions(self):
        spec = make_standard_algebra('O_odd', 4, 1)
        self.assertTrue(all(g.parity == ODD for g in spec.generators))
        self.assertEqual(spec.pair(2, 2), 1)

    def test_symplectic_fermions(self):
        spec = make_standard_algebra('S_odd', 1, 2)
        self.assertEqual(spec.pair(0, 1), -spec.pair(1, 0))

    def test_parity_mismatch(self):
        for kind, k in (('O_ev', 1), ('S_ev', 2), ('S_odd', 3), ('O_odd', 2)):
            with self.assertRaises(InvalidFamilyParameter):
                make_standard_algebra(kind, 1, k)


class WFreeTests(SimpleTestCase):

    def test_sl4(self):
        spec = wfree_sln(4)
        self.assertEqual([g.name for g in spec.generators], ['L', 'W3', 'W4'])
        self.assertEqual([g.weight for g in spec.generators], [2, 3, 4])
        self.assertEqual(spec.z2signs, (1, -1, 1))

    def test_sl7(self):
        spec = wfree_sln(7)
        self.assertEqual(spec.size, 6)
        self.assertEqual(odd_flavors(spec), [1, 2, 3])

    def test_too_small(self):
        with self.assertRaises(TooSmall):
            wfree_sln(2)

    def test_unknown_generator(self):
        with self.assertRaises(UnknownGenerator):
            wfree_sln(4).index('W5')


class ValidationTests(SimpleTestCase):

    def test_sign_law(self):
        generators = [GeneratorSpec('a', EVEN, 2), GeneratorSpec('b', EVEN, 2)]
        with self.assertRaises(InvalidPairing):
            make_spec(generators, [[0, 1], [-1, 0]])
        self.assertTrue(validate_algebra(make_spec(generators, [[0, 1], [1, 0]])))

    def test_weight_blocks(self):
        generators = [GeneratorSpec('a', EVEN, 2), GeneratorSpec('b', EVEN, 4)]
        with self.assertRaises(InvalidPairing):
            make_spec(generators, [[1, 1], [1, 1]])

    def test_duplicate_names(self):
        with self.assertRaises(DuplicateGenerator):
            tensor_product(make_standard_algebra('O_ev', 1, 2), make_standard_algebra('O_ev', 1, 2))

    def test_all_builders_satisfy_sign_law(self):
        specs = [wfree_sln(n) for n in range(3, 8)]
        specs += [make_standard_algebra(kind, 2, k)
                  for kind, k in (('O_ev', 2), ('S_ev', 1), ('S_odd', 2), ('O_odd', 1))]
        specs.append(heisenberg_extension(3)[0])
        for spec in specs:
            self.assertTrue(validate_algebra(spec))


class TensorAndRescaleTests(SimpleTestCase):

    def test_tensor_product(self):
        spec = tensor_product(make_standard_algebra('O_ev', 1, 2, 'h'),
                              make_standard_algebra('O_odd', 2, 1, 'psi'))
        self.assertEqual([g.name for g in spec.generators], ['h1', 'psi1', 'psi2'])
        self.assertEqual(spec.pair(0, 1), 0)
        self.assertEqual(spec.pair(2, 2), 1)
        self.assertEqual(spec.components, (0, 1, 2))

    def test_rescale(self):
        spec, factors = rescale(wfree_sln(4), {'W3': 2})
        self.assertEqual(factors['W3'], 2)
        self.assertEqual(spec.pair(1, 1), 4)
        self.assertNotEqual(spec, wfree_sln(4))
        w3 = generator(spec, 'W3')
        self.assertEqual(nth_product(w3, 5, w3), 4 * vacuum(spec))

    def test_rescale_unknown(self):
        with self.assertRaises(UnknownGenerator):
            rescale(wfree_sln(4), {'W9': 2})


class HeisenbergTests(SimpleTestCase):

    def test_single_flavor_nu(self):
        target, embedding, nu = heisenberg_extension(1)
        self.assertEqual([g.name for g in target.generators], ['alpha3'])
        self.assertEqual(nu.terms, {((0, 2), (0, 0)): 1})
        self.assertEqual([g.name for g in embedding.source.generators], ['W3'])

    def test_nu_is_even_under_sign_flip(self):
        target, _embedding, nu = heisenberg_extension(2)
        for monomial in nu.terms:
            sign = 1
            for g, _d in monomial:
                sign *= target.z2signs[g]
            self.assertEqual(sign, 1)


class SerializationTests(SimpleTestCase):

    def test_representation(self):
        data = FreeFieldSpecSerializer(wfree_sln(3)).data
        self.assertEqual(data['schema'], '1')
        self.assertEqual(data['generators'][1], {'name': 'W3', 'parity': 'even',
                                                 'weight2x': 6, 'z2sign': -1})
        self.assertEqual(data['pairing'], [['1', '0'], ['0', '1']])

    def test_round_trip(self):
        spec = make_standard_algebra('S_ev', 1, 1)
        data = dict(FreeFieldSpecSerializer(spec).data)
        serializer = FreeFieldSpecSerializer(data=data)
        self.assertTrue(serializer.is_valid(), serializer.errors)
        self.assertEqual(serializer.save(), spec)

    def test_invalid_pairing(self):
        data = dict(FreeFieldSpecSerializer(wfree_sln(3)).data)
        data['pairing'] = [['1', '1'], ['0', '1']]
        serializer = FreeFieldSpecSerializer(data=data)
        self.assertFalse(serializer.is_valid())

    def test_hash_ignores_label_and_tracks_pairing(self):
        spec = wfree_sln(4)
        relabelled = make_spec(spec.generators, spec.pairing, 'other')
        self.assertEqual(spec_hash(spec), spec_hash(relabelled))
        self.assertNotEqual(spec_hash(spec), spec_hash(rescale(spec, {'L': 3})[0]))
        self.assertEqual(len(spec_hash(spec)), 64)
