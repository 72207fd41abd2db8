"""Braid words: parsing, normalization, generator statistics and the induced Seifert graph.

A braid on ``n`` strands is written as signed Artin generators: ``k`` stands for
``sigma_k`` and ``-k`` for its inverse, with ``1 <= |k| <= n - 1``.
"""

import logging
from dataclasses import dataclass

from .errors import ParseError, PreconditionError
from .seifgraph import Edge, SignedMultigraph

log = logging.getLogger("plumb.braidcore")


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        if self.strands < 1:
            raise PreconditionError(f"Strand count must be positive, got {self.strands}")
        for letter in self.letters:
            if letter == 0 or abs(letter) >= self.strands:
                raise PreconditionError(
                    f"Generator {letter} out of range for {self.strands} strands"
                )

    def __len__(self) -> int:
        return len(self.letters)

    @property
    def generators(self) -> range:
        return range(1, self.strands)


@dataclass(frozen=True)
class GeneratorCounts:
    """Occurrence counts per generator, indexed by generator (position 0 is sigma_1)"""

    a_plus: tuple[int, ...]
    a_minus: tuple[int, ...]
    eps: tuple[int, ...]

    def count(self, i: int, sign: int) -> int:
        """a_i(sign): occurrences of sigma_i^sign"""
        return self.a_plus[i - 1] if sign > 0 else self.a_minus[i - 1]

    def epsilon(self, i: int) -> int:
        return self.eps[i - 1]


@dataclass(frozen=True)
class DiscPrefixSplit:
    rotation: int
    prefix: tuple[int, ...]
    tail: tuple[int, ...]

    @property
    def m(self) -> int:
        return len(self.tail)

    @property
    def s(self) -> int:
        return sum(1 for letter in self.tail if letter > 0)


def parse_braid(text: str) -> BraidWord:
    """Parse a braid file.

    The file has a ``strands <n>`` line followed by a ``word <k1> <k2> ...`` line.
    Blank lines and lines starting with ``#`` are ignored.

    Args:
        text (str): File contents.

    Raises:
        ParseError: On a missing header, a malformed token or an out-of-range generator.

    Returns:
        BraidWord: The parsed word.
    """
    lines = [
        line.strip()
        for line in text.splitlines()
        if line.strip() and not line.strip().startswith("#")
    ]
    if not lines or lines[0].split()[0] != "strands":
        raise ParseError("Missing 'strands <n>' header")
    header = lines[0].split()
    if len(header) != 2 or not header[1].isdigit() or int(header[1]) < 1:
        raise ParseError(f"Malformed strands line: {lines[0]!r}")
    strands = int(header[1])
    if len(lines) < 2 or lines[1].split()[0] != "word":
        raise ParseError("Missing 'word ...' line")
    if len(lines) > 2:
        raise ParseError(f"Unexpected content after the word line: {lines[2]!r}")
    return braid_from_tokens(lines[1].split()[1:], strands)


def braid_from_tokens(tokens: list[str], strands: int) -> BraidWord:
    """Build a word from signed decimal tokens, as given inline on the command line"""
    letters = []
    for token in tokens:
        try:
            letter = int(token)
        except ValueError:
            raise ParseError(f"Malformed generator token: {token!r}") from None
        if letter == 0 or abs(letter) >= strands:
            raise ParseError(f"Generator {letter} out of range for {strands} strands")
        letters.append(letter)
    word = BraidWord(strands, tuple(letters))
    if missing := missing_generators(word):
        log.warning(
            f"Generators {missing} do not occur; the closure splits into separate pieces"
        )
    return word


def render_braid(w: BraidWord) -> str:
    word_line = " ".join(["word", *(str(letter) for letter in w.letters)])
    return f"strands {w.strands}\n{word_line}\n"


def missing_generators(w: BraidWord) -> list[int]:
    present = {abs(letter) for letter in w.letters}
    return [i for i in w.generators if i not in present]


def free_reduce(w: BraidWord) -> BraidWord:
    """Cancel adjacent inverse pairs until none remain"""
    stack: list[int] = []
    for letter in w.letters:
        if stack and stack[-1] == -letter:
            stack.pop()
        else:
            stack.append(letter)
    return BraidWord(w.strands, tuple(stack))


def insert_trivial_pairs(w: BraidWord) -> BraidWord:
    """Append ``sigma_i sigma_i^-1`` for every generator missing one of its signs"""
    counts = generator_counts(w)
    appended: list[int] = []
    for i in w.generators:
        if counts.count(i, 1) == 0 or counts.count(i, -1) == 0:
            appended.extend((i, -i))
    if appended:
        log.debug(f"Inserted trivial pairs {appended}")
    return BraidWord(w.strands, w.letters + tuple(appended))


def generator_counts(w: BraidWord) -> GeneratorCounts:
    size = w.strands - 1
    a_plus = [0] * size
    a_minus = [0] * size
    for letter in w.letters:
        if letter > 0:
            a_plus[letter - 1] += 1
        else:
            a_minus[-letter - 1] += 1
    eps = []
    for plus, minus in zip(a_plus, a_minus):
        # sign opposite to the majority; balanced generators get +1
        eps.append(1 if plus == minus else (-1 if plus > minus else 1))
    return GeneratorCounts(tuple(a_plus), tuple(a_minus), tuple(eps))


def disc_word(counts: GeneratorCounts) -> list[int]:
    """The disc sigma_1^eps_1 ... sigma_{n-1}^eps_{n-1} used by the signed bound"""
    return [eps * i for i, eps in enumerate(counts.eps, start=1)]


def closure_components(w: BraidWord) -> int:
    """Number of cycles of the strand permutation, i.e. components of the closure"""
    perm = list(range(w.strands))
    for letter in w.letters:
        i = abs(letter) - 1
        perm[i], perm[i + 1] = perm[i + 1], perm[i]
    seen = [False] * w.strands
    cycles = 0
    for start in range(w.strands):
        if seen[start]:
            continue
        cycles += 1
        position = start
        while not seen[position]:
            seen[position] = True
            position = perm[position]
    return cycles


def rotate(w: BraidWord, r: int) -> BraidWord:
    if not w.letters:
        return w
    r %= len(w.letters)
    return BraidWord(w.strands, w.letters[r:] + w.letters[:r])


def find_disc_prefix(w: BraidWord) -> DiscPrefixSplit | None:
    """Find the least cyclic rotation that starts with a disc.

    A disc is ``n - 1`` positive letters using every generator exactly once, in any
    order. Rotation preserves the closure, so bounds read off the rotated word hold
    for the original link.

    Returns:
        DiscPrefixSplit | None: The split, or None when no rotation exposes a disc.
    """
    size = w.strands - 1
    if size == 0:
        return DiscPrefixSplit(0, (), w.letters)
    wanted = list(w.generators)
    for r in range(len(w.letters)):
        rotated = rotate(w, r).letters
        prefix = rotated[:size]
        if len(prefix) == size and sorted(prefix) == wanted:
            log.debug(f"Disc prefix {list(prefix)} found at rotation {r}")
            return DiscPrefixSplit(r, prefix, rotated[size:])
    return None


def induced_graph(w: BraidWord) -> SignedMultigraph:
    """Seifert graph of the braid closure: one vertex per strand, one signed edge per letter"""
    vertices = tuple(str(i) for i in range(1, w.strands + 1))
    edges = tuple(
        Edge(eid, str(abs(letter)), str(abs(letter) + 1), 1 if letter > 0 else -1)
        for eid, letter in enumerate(w.letters)
    )
    return SignedMultigraph(vertices, edges, closure_components(w))
