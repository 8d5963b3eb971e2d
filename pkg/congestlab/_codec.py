"""
Exact bit encodings of the messages nodes broadcast.

Bit strings are Python strings over '0'/'1'. Ids are fixed width; a set of
s ids is a 16-bit count followed by the ids, and a family is a 16-bit count
followed by its encoded sets. The order in which a set's ids are written
carries its witness (path order, or subtree index order).
"""
from .exceptions import *


COUNT_BITS = 16


class BitWriter(object):
    def __init__(self):
        self._parts = []

    def write_uint(self, value, width):
        if value < 0 or value >= 1 << width:
            raise StructureException(f"Value {value} does not fit in {width} bits")
        if width:
            self._parts.append(format(value, f"0{width}b"))
        return self

    def write_sequence(self, ids, id_bits):
        """A set of ids, written in the given order."""
        self.write_uint(len(ids), COUNT_BITS)
        for v in ids:
            self.write_uint(v, id_bits)
        return self

    def write_family(self, sequences, id_bits):
        sequences = list(sequences)
        self.write_uint(len(sequences), COUNT_BITS)
        for seq in sequences:
            self.write_sequence(seq, id_bits)
        return self

    def getvalue(self):
        return "".join(self._parts)


class BitReader(object):
    def __init__(self, bits):
        self._bits = bits
        self._pos = 0

    def read_uint(self, width):
        if self._pos + width > len(self._bits):
            raise StructureException("Read past the end of the message")
        chunk = self._bits[self._pos : self._pos + width]
        self._pos += width
        return int(chunk, 2) if width else 0

    def read_sequence(self, id_bits):
        count = self.read_uint(COUNT_BITS)
        return tuple(self.read_uint(id_bits) for _ in range(count))

    def read_family(self, id_bits):
        count = self.read_uint(COUNT_BITS)
        return [self.read_sequence(id_bits) for _ in range(count)]

    def at_end(self):
        return self._pos == len(self._bits)


def _check_consumed(r):
    if not r.at_end():
        raise StructureException("Trailing bits after the message")


def encode_family(sequences, id_bits):
    return BitWriter().write_family(sequences, id_bits).getvalue()


def decode_family(bits, id_bits):
    r = BitReader(bits)
    family = r.read_family(id_bits)
    _check_consumed(r)
    return family


def encode_keyed_families(keyed, id_bits):
    """Families tagged by a node id: count, then (key, family) per key in key order."""
    w = BitWriter()
    w.write_uint(len(keyed), COUNT_BITS)
    for key in sorted(keyed):
        w.write_uint(key, id_bits)
        w.write_family(keyed[key], id_bits)
    return w.getvalue()


def decode_keyed_families(bits, id_bits):
    r = BitReader(bits)
    keyed = {}
    for _ in range(r.read_uint(COUNT_BITS)):
        key = r.read_uint(id_bits)
        keyed[key] = r.read_family(id_bits)
    _check_consumed(r)
    return keyed


# Worst-case sizes used by the oblivious schedules


def sequence_bits(size, id_bits):
    return COUNT_BITS + size * id_bits


def family_bits(count, set_size, id_bits):
    return COUNT_BITS + count * sequence_bits(set_size, id_bits)


def keyed_family_bits(keys, count, set_size, id_bits):
    return COUNT_BITS + keys * (id_bits + family_bits(count, set_size, id_bits))
