"""The line-oriented .pcp text format.

    pcgroup <name>
    gen <name> order <m> [power <word>]
    comm <gj> <gi> = <word>

Words are whitespace-separated ``name^exp`` tokens, the empty word is ``1``.
Optional stanzas follow the relations, each closed by ``end``:

    images              distinguished
    a -> <word>         x -> <word>
    b -> <word>         theta x -> <word>
    end                 end
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .presentation import PcPresentation, Word, make_word, prime_of_order
from ..utils.errors import PresentationError


@dataclass
class PcDocument:
    presentation: PcPresentation
    images: dict[str, Word] = field(default_factory=dict)
    distinguished: dict[str, Word] = field(default_factory=dict)
    theta: dict[str, Word] = field(default_factory=dict)


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def _parse_word(tokens: list[str], index: dict[str, int], line_no: int) -> Word:
    if tokens == ["1"]:
        return ()
    word = []
    for token in tokens:
        name, _, exp_text = token.partition("^")
        if name not in index:
            raise PresentationError(f"unknown generator {name!r}", line_no)
        try:
            exp = int(exp_text) if exp_text else 1
        except ValueError:
            raise PresentationError(f"bad exponent in {token!r}", line_no) from None
        word.append((index[name], exp))
    return make_word(word)


def parse_document(text: str) -> PcDocument:
    lines = [(no, _strip(raw)) for no, raw in enumerate(text.splitlines(), start=1)]
    lines = [(no, line) for no, line in lines if line]
    if not lines:
        raise PresentationError("empty input", 1)
    no, first = lines[0]
    parts = first.split()
    if len(parts) != 2 or parts[0] != "pcgroup":
        raise PresentationError("expected 'pcgroup <name>'", no)
    name = parts[1]

    gens: list[tuple[str, int, list[str], int]] = []
    comms: list[tuple[str, str, list[str], int]] = []
    stanzas: dict[str, list[tuple[int, str]]] = {}
    current: str | None = None
    for no, line in lines[1:]:
        parts = line.split()
        if current is not None:
            if parts == ["end"]:
                current = None
            else:
                stanzas[current].append((no, line))
            continue
        keyword = parts[0]
        if keyword in ("images", "distinguished") and len(parts) == 1:
            current = keyword
            stanzas[current] = []
        elif keyword == "gen":
            if len(parts) < 4 or parts[2] != "order":
                raise PresentationError("expected 'gen <name> order <m> [power <word>]'", no)
            if comms:
                raise PresentationError("generators must be declared before commutator relations", no)
            try:
                order = int(parts[3])
            except ValueError:
                raise PresentationError(f"bad relative order {parts[3]!r}", no) from None
            if order < 2 or prime_of_order(order) is None:
                raise PresentationError(f"relative order {order} of {parts[1]} is not a prime power", no)
            power: list[str] = []
            if len(parts) > 4:
                if parts[4] != "power" or len(parts) == 5:
                    raise PresentationError("expected 'power <word>' after the order", no)
                power = parts[5:]
            gens.append((parts[1], order, power, no))
        elif keyword == "comm":
            if len(parts) < 5 or parts[3] != "=":
                raise PresentationError("expected 'comm <gj> <gi> = <word>'", no)
            comms.append((parts[1], parts[2], parts[4:], no))
        else:
            raise PresentationError(f"unknown keyword {keyword!r}", no)
    if current is not None:
        raise PresentationError(f"stanza {current!r} is not closed by 'end'", lines[-1][0])
    if not gens:
        raise PresentationError("presentation has no generators", lines[0][0])

    index = {g: i for i, (g, _, _, _) in enumerate(gens)}
    power_tails = []
    for i, (g, order, power, no) in enumerate(gens):
        tail = _parse_word(power, index, no) if power else ()
        _check_later(tail, i, gens, no)
        power_tails.append(tail)
    comm_items = []
    for gj, gi, word_tokens, no in comms:
        if gj not in index or gi not in index:
            raise PresentationError(f"unknown generator in 'comm {gj} {gi}'", no)
        j, i = index[gj], index[gi]
        if j <= i:
            raise PresentationError(f"{gj} must be declared after {gi}", no)
        tail = _parse_word(word_tokens, index, no)
        _check_later(tail, j, gens, no)
        if tail:
            comm_items.append(((j, i), tail))
    try:
        presentation = PcPresentation(
            name=name,
            names=tuple(g for g, _, _, _ in gens),
            rel_orders=tuple(order for _, order, _, _ in gens),
            power_tails=tuple(power_tails),
            comm_items=tuple(comm_items),
        )
    except PresentationError as exc:
        raise PresentationError(str(exc), lines[0][0]) from None

    document = PcDocument(presentation)
    for no, line in stanzas.get("images", []):
        key, word = _parse_mapping(line, index, no)
        document.images[key] = word
    for no, line in stanzas.get("distinguished", []):
        key, word = _parse_mapping(line, index, no)
        if key.startswith("theta "):
            document.theta[key.split()[1]] = word
        else:
            document.distinguished[key] = word
    return document


def _check_later(tail: Word, after: int, gens: list, no: int) -> None:
    for gen, exp in tail:
        if gen <= after:
            raise PresentationError(f"tail references {gens[gen][0]}, which is not a later generator", no)
        if not 0 < exp < gens[gen][1]:
            raise PresentationError(f"tail exponent {exp} of {gens[gen][0]} is not reduced", no)


def _parse_mapping(line: str, index: dict[str, int], no: int) -> tuple[str, Word]:
    key, arrow, rest = line.partition("->")
    if not arrow or not key.strip():
        raise PresentationError("expected '<name> -> <word>'", no)
    return " ".join(key.split()), _parse_word(rest.split(), index, no)


def parse_presentation(text: str) -> PcPresentation:
    return parse_document(text).presentation


def format_presentation(presentation: PcPresentation) -> str:
    lines = [f"pcgroup {presentation.name}"]
    for i, g in enumerate(presentation.names):
        line = f"gen {g} order {presentation.rel_orders[i]}"
        if presentation.power_tails[i]:
            line += f" power {presentation.format_word(presentation.power_tails[i])}"
        lines.append(line)
    for (j, i), tail in presentation.comm_items:
        lines.append(f"comm {presentation.names[j]} {presentation.names[i]} = {presentation.format_word(tail)}")
    return "\n".join(lines) + "\n"


def format_document(document: PcDocument) -> str:
    p = document.presentation
    text = format_presentation(document.presentation)
    if document.images:
        text += "images\n"
        text += "".join(f"{k} -> {p.format_word(w)}\n" for k, w in document.images.items())
        text += "end\n"
    if document.distinguished or document.theta:
        text += "distinguished\n"
        text += "".join(f"{k} -> {p.format_word(w)}\n" for k, w in document.distinguished.items())
        text += "".join(f"theta {k} -> {p.format_word(w)}\n" for k, w in document.theta.items())
        text += "end\n"
    return text
