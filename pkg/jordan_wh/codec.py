"""Algebra descriptor grammar and the JSON shapes of elements and boundary points.

    descriptor := ("rn" | "sym" | "spin") ":" <positive int>
                | "sum(" descriptor ("," descriptor)+ ")"
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from jordan_wh.algebra import AlgebraDescriptor, AlgebraKind, Element
from jordan_wh.errors import ParseError
from jordan_wh.wiener_hopf import BoundaryPoint

_KINDS = {kind.value: kind for kind in AlgebraKind if kind is not AlgebraKind.DIRECT_SUM}


class _DescriptorParser:
    def __init__(self, text: str) -> None:
        self.text = text
        self.pos = 0

    def fail(self, message: str, position: int | None = None) -> ParseError:
        return ParseError(message, self.pos if position is None else position)

    def expect(self, token: str) -> None:
        if not self.text.startswith(token, self.pos):
            raise self.fail(f"expected {token!r}")
        self.pos += len(token)

    def parse(self) -> AlgebraDescriptor:
        descriptor = self.descriptor()
        if self.pos != len(self.text):
            raise self.fail("trailing characters")
        return descriptor

    def descriptor(self) -> AlgebraDescriptor:
        if self.text.startswith("sum(", self.pos):
            self.pos += len("sum(")
            summands = [self.descriptor()]
            while self.text.startswith(",", self.pos):
                self.pos += 1
                summands.append(self.descriptor())
            self.expect(")")
            if len(summands) < 2:
                raise self.fail("sum(...) needs at least two summands")
            return AlgebraDescriptor.direct_sum(*summands)

        start = self.pos
        colon = self.text.find(":", start)
        if colon < 0 or self.text[start:colon] not in _KINDS:
            raise self.fail("expected rn:, sym:, spin: or sum(")
        kind = _KINDS[self.text[start:colon]]
        self.pos = colon + 1
        digits_at = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == digits_at:
            raise self.fail("expected a size")
        try:
            return AlgebraDescriptor(kind, int(self.text[digits_at : self.pos]))
        except ValueError as exc:
            raise self.fail(str(exc), digits_at) from exc


def parse_descriptor(text: str) -> AlgebraDescriptor:
    return _DescriptorParser(text.strip()).parse()


def element_to_json(x: Element) -> dict[str, Any]:
    return {"algebra": str(x.algebra), "coords": [float(c) for c in x.coords]}


def element_from_json(payload: dict[str, Any], algebra: AlgebraDescriptor | None = None) -> Element:
    try:
        descriptor = parse_descriptor(payload["algebra"])
        coords = payload["coords"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"element JSON needs 'algebra' and 'coords': {exc}") from exc
    if algebra is not None and descriptor != algebra:
        raise ValueError(f"element is in {descriptor}, expected {algebra}")
    return Element(descriptor, coords)


def boundary_to_json(p: BoundaryPoint) -> dict[str, Any]:
    return {"e": element_to_json(p.e), "x": element_to_json(p.x)}


def boundary_from_json(payload: dict[str, Any]) -> BoundaryPoint:
    try:
        e, x = payload["e"], payload["x"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"boundary point JSON needs 'e' and 'x': {exc}") from exc
    e_elem = element_from_json(e)
    return BoundaryPoint(e_elem, element_from_json(x, e_elem.algebra)).validate()


def read_json(path: str) -> Any:
    return json.loads(Path(path).read_text(encoding="utf-8"))
