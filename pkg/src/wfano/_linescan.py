"""Shared scanner for the line-oriented text formats (1-based positions)."""
from __future__ import annotations


class PositionedError(ValueError):
    """Parse failure carrying a 1-based line/column and what was expected."""

    def __init__(self, line: int, col: int, expected: str):
        self.line = line
        self.col = col
        self.expected = expected
        super().__init__(f"{line}:{col}: expected {expected}")


class LineCursor:
    """Whitespace-separated token scanner over one line."""

    def __init__(self, lineno: int, line: str, error=PositionedError):
        self.lineno = lineno
        self.line = line.rstrip()
        self.pos = 0
        self._error = error

    def fail(self, expected: str, col: int | None = None):
        raise self._error(self.lineno, self.pos + 1 if col is None else col, expected)

    def next_token(self, expected: str) -> tuple[str, int]:
        while self.pos < len(self.line) and self.line[self.pos].isspace():
            self.pos += 1
        if self.pos >= len(self.line):
            self.fail(expected)
        start = self.pos
        while self.pos < len(self.line) and not self.line[self.pos].isspace():
            self.pos += 1
        return self.line[start:self.pos], start + 1

    def rest(self) -> str:
        return self.line[self.pos:].strip()

    def at_end(self) -> bool:
        return not self.line[self.pos:].strip()

    def expect_end(self):
        if not self.at_end():
            tok, col = self.next_token("end of line")
            self.fail("end of line", col)


def content_lines(source: str):
    """Yield (lineno, line) for lines that are neither blank nor comments."""
    for lineno, raw in enumerate(source.splitlines(), start=1):
        stripped = raw.strip()
        if stripped and not stripped.startswith("#"):
            yield lineno, raw
