"""Fixed-length binary symbol codes and the {1,10,100,000} block calculus.

Codes have the shape 001 (d 1)* 11 with the payload bits d taken from a
salted counter.  The 001 prefix makes "00" occur only at a code start, so
aligned decoding is forced structurally, and no block is a prefix of any
code.  The salt makes compilations reproducible while letting a caller
steer codes away from given payload strings.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

BLOCKS = ("1", "10", "100", "000")


class CodingError(ValueError):
    pass


@dataclass(frozen=True)
class CodeTable:
    alphabet: tuple[str, ...]
    code_len: int
    codes: dict  # symbol -> bit string, insertion-ordered like alphabet
    salt: int
    blocks: tuple[str, ...] = BLOCKS

    def __post_init__(self):
        object.__setattr__(self, "_decode", {v: k for k, v in self.codes.items()})

    def code(self, symbol: str) -> str:
        try:
            return self.codes[symbol]
        except KeyError:
            raise CodingError(f"unknown symbol {symbol!r}") from None


@dataclass(frozen=True)
class PropCheck:
    ok: bool
    witness: str = ""


@dataclass(frozen=True)
class PropertyReport:
    prop1: PropCheck
    prop2: PropCheck
    prop3: PropCheck
    prop4: PropCheck

    def all_ok(self) -> bool:
        return all(p.ok for p in (self.prop1, self.prop2, self.prop3, self.prop4))


def _payload_width(n_symbols: int, n: int) -> int:
    return math.ceil(math.log2(n_symbols * (2 * n + 2) + n_symbols)) + 1


def _make_code(value: int, m: int) -> str:
    payload = format(value, f"0{m}b")
    return "001" + "".join(d + "1" for d in payload) + "11"


def build_code_table(alphabet, n: int, avoid=(), salt_seed: int = 0) -> CodeTable:
    """Build a code table for `alphabet` with payload length bound n.

    The salt is the start of a window of |alphabet| consecutive counter
    values whose codes occur in none of the `avoid` strings; the search
    starts at salt_seed so compilations are reproducible.
    """
    alphabet = tuple(alphabet)
    if len(alphabet) < 3:
        raise CodingError("alphabet must have more than 2 symbols")
    if len(set(alphabet)) != len(alphabet):
        raise CodingError("alphabet has repeated symbols")
    if n < 1:
        raise CodingError("payload length bound must be >= 1")
    m = _payload_width(len(alphabet), n)
    span = (1 << m) - len(alphabet)  # salts 0..span are valid windows
    base = salt_seed % (span + 1)
    for k in range(span + 1):
        salt = (base + k) % (span + 1)
        codes = [_make_code(salt + i, m) for i in range(len(alphabet))]
        if all(c not in s for c in codes for s in avoid):
            table = dict(zip(alphabet, codes))
            return CodeTable(alphabet, 2 * m + 5, table, salt)
    raise CodingError("no salt window avoids the given strings")


def encode(table: CodeTable, symbols) -> str:
    return "".join(table.code(s) for s in symbols)


def decode(table: CodeTable, bits: str) -> list:
    l = table.code_len
    if len(bits) % l != 0:
        raise CodingError(f"bit length {len(bits)} not a multiple of {l}")
    out = []
    for i in range(0, len(bits), l):
        chunk = bits[i : i + l]
        sym = table._decode.get(chunk)
        if sym is None:
            raise CodingError(f"chunk at offset {i} is not a code: {chunk}")
        out.append(sym)
    return out


class Undecomposable:
    """Marker result: the string has no factorization over the block set."""

    def __repr__(self):
        return "Undecomposable"

    def __eq__(self, other):
        return isinstance(other, Undecomposable)

    def __hash__(self):
        return hash("Undecomposable")


UNDECOMPOSABLE = Undecomposable()


def block_decompose(x: str):
    """Factor x over {1,10,100,000}, or return UNDECOMPOSABLE.

    The factorization, when it exists, is unique: after each 1 the run of
    following zeros fixes how many stay attached (its length mod 3), and a
    leading zero run must have length divisible by 3.
    """
    out = []
    i = 0
    n = len(x)
    while i < n:
        if x[i] == "0":
            if x[i : i + 3] != "000":
                return UNDECOMPOSABLE
            out.append("000")
            i += 3
        else:
            j = i + 1
            while j < n and x[j] == "0":
                j += 1
            zeros = j - i - 1
            take = zeros % 3
            out.append("1" + "0" * take)
            i += 1 + take
    return out


def verify_properties(table: CodeTable, x: str, y: str) -> PropertyReport:
    """Check the four code-scheme properties against payload strings x, y."""
    codes = list(table.codes.values())
    # 1: equal lengths
    p1 = PropCheck(True)
    for sym, c in table.codes.items():
        if len(c) != table.code_len:
            p1 = PropCheck(False, f"code of {sym} has length {len(c)}")
            break
    # 2: no code occurs inside x or y
    p2 = PropCheck(True)
    for label, s in (("x", x), ("y", y)):
        for sym, c in table.codes.items():
            at = s.find(c)
            if at >= 0:
                p2 = PropCheck(False, f"code of {sym} in {label} at offset {at}")
                break
        if not p2.ok:
            break
    # 3: a nonempty suffix of a code that prefixes a code equals both
    p3 = PropCheck(True)
    for u in codes:
        for v in codes:
            for k in range(1, len(u) + 1):
                z = u[-k:]
                if v.startswith(z) and not (z == u == v):
                    p3 = PropCheck(False, f"suffix {z} of {u} prefixes {v}")
                    break
            if not p3.ok:
                break
        if not p3.ok:
            break
    # 4: x and y decompose into blocks, and no block prefixes a code
    p4 = PropCheck(True)
    for label, s in (("x", x), ("y", y)):
        if block_decompose(s) == UNDECOMPOSABLE:
            p4 = PropCheck(False, f"{label} has no block decomposition")
            break
    if p4.ok:
        for b in table.blocks:
            for c in codes:
                if c.startswith(b):
                    p4 = PropCheck(False, f"block {b} prefixes code {c}")
                    break
            if not p4.ok:
                break
    return PropertyReport(p1, p2, p3, p4)


def code_len_bound(n_symbols: int, n: int) -> int:
    """Concrete form of the 2 log + O(1) code length guarantee."""
    return 2 * math.ceil(math.log2(n_symbols * (2 * n + 2))) + 9


# --- JSON sidecar --------------------------------------------------------

def table_to_json(table: CodeTable) -> str:
    doc = {
        "alphabet": list(table.alphabet),
        "code_len": table.code_len,
        "salt": table.salt,
        "codes": dict(table.codes),
    }
    return json.dumps(doc, indent=2)


def table_from_json(text: str) -> CodeTable:
    doc = json.loads(text)
    return CodeTable(
        alphabet=tuple(doc["alphabet"]),
        code_len=doc["code_len"],
        codes={k: doc["codes"][k] for k in doc["alphabet"]},
        salt=doc["salt"],
    )
