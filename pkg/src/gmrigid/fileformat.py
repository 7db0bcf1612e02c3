"""Plain-text manifold files.

One declaration per line, `#` starts a comment:

    vertex <id> genus=<int> cones=(p,q),(p,q),... slots=<int>
    edge <id>.<slot> -- <id>.<slot> matrix=[a,b;c,d]
    mode closed
    mode knot root=<id>.<slot>

The cones field is omitted for a cone-free vertex.  Field order is
fixed; the mode line is optional (the free-slot count decides) but when
present it is checked, including the declared root slot.  Validation
errors from the piece and gluing constructors are re-raised with the
offending line number prefixed, keeping their type.
"""

from .errors import GmError, ParseError
from .manifold import assemble, make_edge
from .seifert import make_piece


class _LineScanner:
    """Cursor over one declaration line; reports 1-based columns."""

    def __init__(self, text, line):
        self.text = text
        self.line = line
        self.pos = 0

    def fail(self, message, at=None):
        raise ParseError(message, line=self.line, col=(self.pos if at is None else at) + 1)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def at_end(self):
        self.skip_ws()
        return self.pos >= len(self.text)

    def expect(self, ch):
        self.skip_ws()
        if self.pos >= len(self.text) or self.text[self.pos] != ch:
            self.fail("expected %r" % ch)
        self.pos += 1

    def word(self):
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and (
            self.text[self.pos].isalnum() or self.text[self.pos] == "_"
        ):
            self.pos += 1
        if start == self.pos:
            self.fail("expected a name")
        return self.text[start:self.pos]

    def integer(self):
        self.skip_ws()
        start = self.pos
        if self.pos < len(self.text) and self.text[self.pos] in "+-":
            self.pos += 1
        digits = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == digits:
            self.fail("expected an integer", at=start)
        return int(self.text[start:self.pos])

    def field(self, name):
        self.skip_ws()
        start = self.pos
        got = self.word()
        if got != name:
            self.fail("expected %r, got %r" % (name, got), at=start)
        self.expect("=")

    def slot_ref(self):
        v = self.word()
        self.expect(".")
        return v, self.integer()


def _parse_vertex(sc, pieces, lines):
    start = sc.pos
    name = sc.word()
    if name in pieces:
        sc.fail("vertex %r already declared at line %d" % (name, lines[name]), at=start)
    sc.field("genus")
    genus = sc.integer()
    cones = []
    sc.skip_ws()
    if sc.text.startswith("cones", sc.pos):
        sc.field("cones")
        while True:
            sc.expect("(")
            p = sc.integer()
            sc.expect(",")
            q = sc.integer()
            sc.expect(")")
            cones.append((p, q))
            sc.skip_ws()
            if sc.pos < len(sc.text) and sc.text[sc.pos] == ",":
                sc.pos += 1
            else:
                break
    sc.field("slots")
    slots = sc.integer()
    try:
        pieces[name] = make_piece(genus, slots, cones)
    except GmError as err:
        raise type(err)("line %d: %s" % (sc.line, err)) from None
    lines[name] = sc.line


def _parse_edge(sc, pieces, edges, used):
    def end():
        start = sc.pos
        v, s = sc.slot_ref()
        if v not in pieces:
            sc.fail("unknown vertex %r" % v, at=start)
        if not 0 <= s < pieces[v].boundary_count:
            sc.fail(
                "slot %d out of range for %r (%d slots)"
                % (s, v, pieces[v].boundary_count),
                at=start,
            )
        if (v, s) in used:
            sc.fail("slot %s.%d already glued at line %d" % (v, s, used[v, s]), at=start)
        used[v, s] = sc.line
        return v, s

    end0 = end()
    sc.expect("-")
    sc.expect("-")
    end1 = end()
    sc.field("matrix")
    sc.expect("[")
    a = sc.integer()
    sc.expect(",")
    b = sc.integer()
    sc.expect(";")
    c = sc.integer()
    sc.expect(",")
    d = sc.integer()
    sc.expect("]")
    try:
        edges.append(make_edge(end0, end1, (a, b, c, d)))
    except GmError as err:
        raise type(err)("line %d: %s" % (sc.line, err)) from None


def parse_manifold(text):
    """Parse file text into a validated GraphManifold."""
    pieces, edges = {}, []
    vertex_lines, used_slots = {}, {}
    mode, root, mode_line = None, None, None
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0]
        sc = _LineScanner(body, lineno)
        if sc.at_end():
            continue
        start = sc.pos
        kind = sc.word()
        if kind == "vertex":
            _parse_vertex(sc, pieces, vertex_lines)
        elif kind == "edge":
            _parse_edge(sc, pieces, edges, used_slots)
        elif kind == "mode":
            if mode is not None:
                sc.fail("mode already declared at line %d" % mode_line, at=start)
            mode = sc.word()
            if mode == "knot":
                sc.field("root")
                root = sc.slot_ref()
            elif mode != "closed":
                sc.fail("mode must be 'closed' or 'knot', got %r" % mode, at=start)
            mode_line = lineno
        else:
            sc.fail("unknown declaration %r" % kind, at=start)
        if not sc.at_end():
            sc.fail("trailing input")
    if not pieces:
        raise ParseError("no vertex declarations", line=1, col=1)
    m = assemble(pieces, edges, mode=mode)
    if mode == "knot" and root != m.root():
        raise ParseError(
            "declared root %s.%d but the free slot is %s.%d" % (root + m.root()),
            line=mode_line,
            col=1,
        )
    return m


def serialize_manifold(m):
    """Render a manifold in the line format; parses back to equal data."""
    out = []
    for v in m.vertex_names():
        piece = m.pieces[v]
        parts = ["vertex %s genus=%d" % (v, piece.genus)]
        if piece.cones:
            parts.append("cones=" + ",".join("(%d,%d)" % (c.p, c.q) for c in piece.cones))
        parts.append("slots=%d" % piece.boundary_count)
        out.append(" ".join(parts))
    for e in m.edges:
        out.append(
            "edge %s.%d -- %s.%d matrix=[%d,%d;%d,%d]"
            % ((e.v0, e.s0, e.v1, e.s1) + e.glue.entries())
        )
    if m.mode == "knot":
        out.append("mode knot root=%s.%d" % m.root())
    else:
        out.append("mode closed")
    return "\n".join(out) + "\n"


def load_manifold(path):
    with open(path, "r", encoding="utf-8") as fh:
        return parse_manifold(fh.read())


def save_manifold(m, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_manifold(m))
