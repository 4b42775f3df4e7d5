"""Parse and render the grounded-search turn format.

A policy emission for one turn is a reasoning block followed by exactly one
action: either a tool-call JSON object or an answer block::

    <reason>...</reason>
    <tool_call>{"name": "text_search", "arguments": {"input": ["q1", "q2"]}}</tool_call>

    <reason>...</reason>
    <answer>Paris</answer>

Tool-call payloads use the wire keys ``image_id``, ``area`` (list of
normalized [x1, y1, x2, y2] boxes) and ``input`` (list of query strings).
Parsing is total: any non-conforming input raises a classified FormatError
instead of crashing, so malformed emissions can be penalized downstream.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

REASON_OPEN = "<reason>"
REASON_CLOSE = "</reason>"
TOOL_OPEN = "<tool_call>"
TOOL_CLOSE = "</tool_call>"
ANSWER_OPEN = "<answer>"
ANSWER_CLOSE = "</answer>"

FORMAT_ERROR_KINDS = (
    "missing_reason",
    "malformed_json",
    "multiple_actions",
    "bad_region",
    "empty_query",
)


class FormatError(ValueError):
    """Raised when a raw turn does not conform to the action grammar."""

    def __init__(self, kind: str, message: str = ""):
        assert kind in FORMAT_ERROR_KINDS, kind
        super().__init__(message or kind)
        self.kind = kind


@dataclass(frozen=True)
class Region:
    """Normalized bounding box; coordinates are fractions of image width/height."""

    x1: float
    y1: float
    x2: float
    y2: float

    def __post_init__(self):
        for v in (self.x1, self.y1, self.x2, self.y2):
            if not isinstance(v, (int, float)) or isinstance(v, bool):
                raise FormatError("bad_region", f"non-numeric coordinate {v!r}")
            if not 0.0 <= v <= 1.0:
                raise FormatError("bad_region", f"coordinate {v} outside [0, 1]")
        if not (self.x1 < self.x2 and self.y1 < self.y2):
            raise FormatError(
                "bad_region",
                f"degenerate box ({self.x1}, {self.y1}, {self.x2}, {self.y2})",
            )

    def area(self) -> float:
        return (self.x2 - self.x1) * (self.y2 - self.y1)

    def iou(self, other: "Region") -> float:
        ix = max(0.0, min(self.x2, other.x2) - max(self.x1, other.x1))
        iy = max(0.0, min(self.y2, other.y2) - max(self.y1, other.y1))
        inter = ix * iy
        if inter == 0.0:
            return 0.0
        return inter / (self.area() + other.area() - inter)

    def as_list(self) -> list[float]:
        return [self.x1, self.y1, self.x2, self.y2]


@dataclass(frozen=True)
class ImageSearch:
    image_id: str
    regions: tuple[Region, ...] | None = None

    def __post_init__(self):
        if self.regions is not None and len(self.regions) == 0:
            raise FormatError("bad_region", "empty area list")

    @property
    def request_count(self) -> int:
        """Backend invocations this call dispatches (one per region; whole image = 1)."""
        return len(self.regions) if self.regions is not None else 1


@dataclass(frozen=True)
class TextSearch:
    queries: tuple[str, ...]

    def __post_init__(self):
        if len(self.queries) == 0:
            raise FormatError("empty_query", "no queries given")
        for q in self.queries:
            if not isinstance(q, str) or not q.strip():
                raise FormatError("empty_query", f"blank query {q!r}")

    @property
    def request_count(self) -> int:
        return len(self.queries)


ToolInvocation = ImageSearch | TextSearch


@dataclass(frozen=True)
class Call:
    invocation: ToolInvocation


@dataclass(frozen=True)
class Answer:
    text: str


@dataclass(frozen=True)
class TurnBlock:
    reason: str
    action: Call | Answer = field()

    def __post_init__(self):
        if not self.reason.strip():
            raise FormatError("missing_reason", "empty reason block")

    @property
    def is_answer(self) -> bool:
        return isinstance(self.action, Answer)


def _find_action_spans(text: str, start: int) -> list[tuple[int, str, object]]:
    """Scan text[start:] for action blocks, decoding tool-call JSON in place.

    Decoding with raw_decode while scanning means delimiter-looking substrings
    inside JSON strings never register as extra blocks.
    """
    decoder = json.JSONDecoder()
    actions: list[tuple[int, str, object]] = []
    pos = start
    while True:
        t = text.find(TOOL_OPEN, pos)
        a = text.find(ANSWER_OPEN, pos)
        if t == -1 and a == -1:
            return actions
        if a == -1 or (t != -1 and t < a):
            body_start = t + len(TOOL_OPEN)
            try:
                payload, end = decoder.raw_decode(text, _skip_ws(text, body_start))
            except ValueError as exc:
                raise FormatError("malformed_json", f"undecodable tool call: {exc}")
            end = _skip_ws(text, end)
            if not text.startswith(TOOL_CLOSE, end):
                raise FormatError("malformed_json", "unterminated tool_call block")
            actions.append((t, "tool_call", payload))
            pos = end + len(TOOL_CLOSE)
        else:
            close = text.find(ANSWER_CLOSE, a + len(ANSWER_OPEN))
            if close == -1:
                raise FormatError("malformed_json", "unterminated answer block")
            actions.append((a, "answer", text[a + len(ANSWER_OPEN) : close]))
            pos = close + len(ANSWER_CLOSE)


def _skip_ws(text: str, pos: int) -> int:
    while pos < len(text) and text[pos] in " \t\r\n":
        pos += 1
    return pos


def _invocation_from_payload(payload: object) -> ToolInvocation:
    if not isinstance(payload, dict):
        raise FormatError("malformed_json", "tool call payload is not an object")
    if set(payload) != {"name", "arguments"}:
        raise FormatError("malformed_json", f"unexpected payload keys {sorted(payload)}")
    name = payload["name"]
    args = payload["arguments"]
    if not isinstance(args, dict):
        raise FormatError("malformed_json", "arguments is not an object")

    if name == "image_search":
        if not set(args) <= {"image_id", "area"}:
            raise FormatError("malformed_json", f"unexpected arguments {sorted(args)}")
        image_id = args.get("image_id")
        if not isinstance(image_id, str) or not image_id:
            raise FormatError("malformed_json", "image_id must be a non-empty string")
        if "area" not in args:
            return ImageSearch(image_id=image_id, regions=None)
        area = args["area"]
        if not isinstance(area, list):
            raise FormatError("malformed_json", "area must be a list of boxes")
        regions = []
        for box in area:
            if (
                not isinstance(box, list)
                or len(box) != 4
                or any(isinstance(v, bool) or not isinstance(v, (int, float)) for v in box)
            ):
                raise FormatError("malformed_json", f"box {box!r} is not 4 numbers")
            regions.append(Region(*(float(v) for v in box)))
        return ImageSearch(image_id=image_id, regions=tuple(regions))

    if name == "text_search":
        if set(args) != {"input"}:
            raise FormatError("malformed_json", f"unexpected arguments {sorted(args)}")
        queries = args["input"]
        if not isinstance(queries, list) or any(not isinstance(q, str) for q in queries):
            raise FormatError("malformed_json", "input must be a list of strings")
        return TextSearch(queries=tuple(queries))

    raise FormatError("malformed_json", f"unknown tool {name!r}")


def parse_turn(raw_text: str) -> TurnBlock:
    """Parse one policy emission into a TurnBlock.

    Raises FormatError(kind) for every non-conforming input; never crashes on
    arbitrary text.
    """
    if not isinstance(raw_text, str):
        raise FormatError("malformed_json", "emission is not text")
    r_open = raw_text.find(REASON_OPEN)
    if r_open == -1:
        raise FormatError("missing_reason", "no reason block")
    # Any action opening before the reason violates think-before-act.
    prefix = raw_text[:r_open]
    if TOOL_OPEN in prefix or ANSWER_OPEN in prefix:
        raise FormatError("missing_reason", "action precedes the reason block")
    r_close = raw_text.find(REASON_CLOSE, r_open + len(REASON_OPEN))
    if r_close == -1:
        raise FormatError("missing_reason", "unterminated reason block")
    reason = raw_text[r_open + len(REASON_OPEN) : r_close]
    if not reason.strip():
        raise FormatError("missing_reason", "empty reason block")

    actions = _find_action_spans(raw_text, r_close + len(REASON_CLOSE))
    if len(actions) == 0:
        raise FormatError("malformed_json", "no action block after the reason")
    if len(actions) > 1:
        raise FormatError("multiple_actions", f"{len(actions)} action blocks in one turn")

    _, kind, payload = actions[0]
    if kind == "answer":
        return TurnBlock(reason=reason, action=Answer(text=str(payload)))
    return TurnBlock(reason=reason, action=Call(_invocation_from_payload(payload)))


def render_invocation(inv: ToolInvocation) -> str:
    if isinstance(inv, ImageSearch):
        args: dict = {"image_id": inv.image_id}
        if inv.regions is not None:
            args["area"] = [r.as_list() for r in inv.regions]
        payload = {"name": "image_search", "arguments": args}
    else:
        payload = {"name": "text_search", "arguments": {"input": list(inv.queries)}}
    return json.dumps(payload, ensure_ascii=False)


def render_turn(turn: TurnBlock) -> str:
    """Inverse of parse_turn for valid turns: parse_turn(render_turn(t)) == t."""
    if REASON_CLOSE in turn.reason:
        raise ValueError("reason contains the structural close tag")
    parts = [f"{REASON_OPEN}{turn.reason}{REASON_CLOSE}"]
    if isinstance(turn.action, Answer):
        if ANSWER_CLOSE in turn.action.text:
            raise ValueError("answer contains the structural close tag")
        parts.append(f"{ANSWER_OPEN}{turn.action.text}{ANSWER_CLOSE}")
    else:
        parts.append(f"{TOOL_OPEN}{render_invocation(turn.action.invocation)}{TOOL_CLOSE}")
    return "\n".join(parts)
