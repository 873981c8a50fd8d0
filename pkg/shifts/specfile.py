"""
Shift Spec File Module

This module loads shift specifications from the line-oriented text format
used for fixtures and command-line input, and renders them back:

    name: golden mean
    alphabet: 2
    variant: ordered
    S1: finite 1
    S2: cofinite []

Set clauses take one of four forms:

    S<i>: finite 1 2 3
    S<i>: cofinite [2 5]            (empty list, or no list, is ℕ)
    S<i>: epd initial=1,4 diffs=2,3
    S<i>: explicit 2 3 5 7 11 bound=12

'#' starts a comment. The grammar is parsed with lark; syntax problems
raise ParseError and well-formed text describing an invalid shift raises
SemanticError, both with line numbers.
"""

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

from lark import Lark, Transformer, v_args
from lark.exceptions import UnexpectedCharacters, UnexpectedEOF, UnexpectedToken
from lark.lexer import PatternStr

from .errors import ParseError, SemanticError, SetSpecError
from .language import ShiftSpec, Variant
from .sets import (
    BoundedExplicitSet,
    CofiniteSet,
    FiniteSet,
    PeriodicDeltaSet,
    SetSpec,
)

logger = logging.getLogger(__name__)

SPEC_GRAMMAR = r"""
    start: _NL* (_line _NL+)* _line?

    _line: alphabet | variant | name | set_clause

    alphabet: "alphabet" ":" INT
    variant: "variant" ":" VARIANT
    name: "name" ":" NAME_TEXT
    set_clause: SET_NAME ":" _set_body

    _set_body: finite | cofinite | epd | explicit
    finite: "finite" INT+
    cofinite: "cofinite" ("[" [_int_list] "]")?
    epd: "epd" "initial" "=" int_csv "diffs" "=" int_csv
    explicit: "explicit" INT+ "bound" "=" INT

    _int_list: INT (","? INT)*
    int_csv: INT ("," INT)*

    VARIANT: "ordered" | "generalized"
    SET_NAME: /S[0-9]+/
    NAME_TEXT: /[^\n#]+/
    COMMENT: /#[^\n]*/

    %import common.INT
    %import common.WS_INLINE
    %import common.NEWLINE -> _NL
    %ignore WS_INLINE
    %ignore COMMENT
"""

_parser = Lark(SPEC_GRAMMAR, parser="lalr", propagate_positions=True, maybe_placeholders=False)


@dataclass(frozen=True)
class SpecDocument:
    """
    Parsed spec file.

    Attributes:
        alphabet: Alphabet size p
        sets: One set per letter, letter i at index i - 1
        variant: Letter-order rule
        name: Optional label
    """

    alphabet: int
    sets: Tuple[SetSpec, ...]
    variant: Variant = Variant.ORDERED
    name: Optional[str] = None

    def to_shift(self) -> ShiftSpec:
        return ShiftSpec(self.alphabet, self.sets, self.variant, self.name)

    @classmethod
    def from_shift(cls, shift: ShiftSpec) -> "SpecDocument":
        return cls(shift.p, shift.sets, shift.variant, shift.name)


@dataclass
class _Clause:
    key: str
    value: object
    line: int


def _ints(tokens) -> List[int]:
    return [int(t) for t in tokens]


class _ClauseBuilder(Transformer):
    """Turn each parsed line into a _Clause carrying its line number."""

    @v_args(meta=True)
    def alphabet(self, meta, children):
        return _Clause('alphabet', int(children[0]), meta.line)

    @v_args(meta=True)
    def variant(self, meta, children):
        return _Clause('variant', Variant(str(children[0])), meta.line)

    @v_args(meta=True)
    def name(self, meta, children):
        return _Clause('name', str(children[0]).strip(), meta.line)

    def int_csv(self, children):
        return _ints(children)

    def finite(self, children):
        return ('finite', _ints(children))

    def cofinite(self, children):
        return ('cofinite', _ints(children))

    def epd(self, children):
        return ('epd', children[0], children[1])

    def explicit(self, children):
        values = _ints(children)
        return ('explicit', values[:-1], values[-1])

    @v_args(meta=True)
    def set_clause(self, meta, children):
        letter = int(str(children[0])[1:])
        return _Clause('set', (letter, children[1]), meta.line)

    def start(self, children):
        return [c for c in children if isinstance(c, _Clause)]


def _build_set(body: tuple, line: int) -> SetSpec:
    kind = body[0]
    try:
        if kind == 'finite':
            return FiniteSet(tuple(body[1]))
        if kind == 'cofinite':
            return CofiniteSet(tuple(body[1]))
        if kind == 'epd':
            return PeriodicDeltaSet(tuple(body[1]), tuple(body[2]))
        return BoundedExplicitSet(tuple(body[1]), body[2])
    except SetSpecError as exc:
        raise SemanticError(str(exc), line) from exc


def _describe_terminal(name: str) -> str:
    if name == "_NL":
        return "end of line"
    try:
        pattern = _parser.get_terminal(name).pattern
    except KeyError:
        return name
    return pattern.value if isinstance(pattern, PatternStr) else name.lower()


def parse_spec(text: str) -> SpecDocument:
    """
    Parse spec text.

    Args:
        text: Spec file contents

    Returns:
        SpecDocument

    Raises:
        ParseError: Syntax error, with line and column
        SemanticError: Missing or duplicate clauses, invalid sets
    """
    try:
        tree = _parser.parse(text if text.endswith('\n') else text + '\n')
    except UnexpectedEOF as exc:
        raise ParseError("unexpected end of input", None, None) from exc
    except UnexpectedCharacters as exc:
        raise ParseError(f"unexpected character {exc.char!r}", exc.line, exc.column) from exc
    except UnexpectedToken as exc:
        found = str(exc.token).split()
        what = f"unexpected {found[0]!r}" if found else "unexpected end of input"
        expected = ", ".join(sorted({_describe_terminal(name) for name in exc.expected}))
        raise ParseError(f"{what}, expected one of: {expected}", exc.line, exc.column) from exc

    clauses = _ClauseBuilder().transform(tree)
    alphabet: Optional[_Clause] = None
    variant: Optional[_Clause] = None
    name: Optional[_Clause] = None
    sets: Dict[int, _Clause] = {}
    for clause in clauses:
        if clause.key == 'set':
            letter = clause.value[0]
            if letter in sets:
                raise SemanticError(f"S{letter} defined twice (first on line {sets[letter].line})", clause.line)
            sets[letter] = clause
            continue
        seen = {'alphabet': alphabet, 'variant': variant, 'name': name}[clause.key]
        if seen is not None:
            raise SemanticError(f"'{clause.key}' given twice (first on line {seen.line})", clause.line)
        if clause.key == 'alphabet':
            alphabet = clause
        elif clause.key == 'variant':
            variant = clause
        else:
            name = clause

    if alphabet is None:
        raise SemanticError("missing 'alphabet:' line")
    p = alphabet.value
    if p < 2:
        raise SemanticError(f"alphabet size must be at least 2, got {p}", alphabet.line)
    for letter, clause in sorted(sets.items()):
        if not 1 <= letter <= p:
            raise SemanticError(f"S{letter} is outside the alphabet 1..{p}", clause.line)
    missing = [i for i in range(1, p + 1) if i not in sets]
    if missing:
        raise SemanticError(f"missing set clause for letter(s) {', '.join(f'S{i}' for i in missing)}")

    built = tuple(_build_set(sets[i].value[1], sets[i].line) for i in range(1, p + 1))
    return SpecDocument(
        alphabet=p,
        sets=built,
        variant=variant.value if variant else Variant.ORDERED,
        name=name.value if name else None,
    )


def _render_set(spec: SetSpec) -> str:
    if isinstance(spec, FiniteSet):
        return "finite " + " ".join(map(str, spec.elements))
    if isinstance(spec, CofiniteSet):
        return "cofinite [" + " ".join(map(str, spec.excluded)) + "]"
    if isinstance(spec, PeriodicDeltaSet):
        initial = ",".join(map(str, spec.initial))
        diffs = ",".join(map(str, spec.diffs))
        return f"epd initial={initial} diffs={diffs}"
    if isinstance(spec, BoundedExplicitSet):
        return "explicit " + " ".join(map(str, spec.elements)) + f" bound={spec.bound}"
    raise TypeError(f"Cannot render set of type {type(spec).__name__}")


def render_spec(doc: Union[SpecDocument, ShiftSpec]) -> str:
    """
    Render a spec document as text that parse_spec reads back unchanged.

    Args:
        doc: SpecDocument (or ShiftSpec) to render

    Returns:
        Spec text ending with a newline
    """
    if isinstance(doc, ShiftSpec):
        doc = SpecDocument.from_shift(doc)
    lines = []
    if doc.name:
        lines.append(f"name: {doc.name}")
    lines.append(f"alphabet: {doc.alphabet}")
    lines.append(f"variant: {doc.variant.value}")
    for i, spec in enumerate(doc.sets, start=1):
        lines.append(f"S{i}: {_render_set(spec)}")
    return "\n".join(lines) + "\n"


def load_spec(path: Union[str, Path]) -> ShiftSpec:
    """
    Load a shift from a spec file.

    Files without a 'name:' line are named after the file stem.

    Args:
        path: Path to the spec file

    Returns:
        ShiftSpec described by the file
    """
    path = Path(path)
    doc = parse_spec(path.read_text(encoding="utf-8"))
    shift = doc.to_shift()
    if shift.name is None:
        shift = shift.with_sets(shift.sets, name=path.stem)
    logger.info(f"Loaded {shift.name}: p={shift.p}, variant={shift.variant.value} from {path}")
    return shift
