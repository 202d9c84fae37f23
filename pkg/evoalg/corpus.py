"""
Text formats: matrix files, pattern blocks and the bundled table corpus.

Matrix file:
    dim <n> field <Q|F<p>>
    n rows of n scalars; row k lists the coefficients of e_k in e_1**2 .. e_n**2

Pattern block:
    name <id>            (optional in single-pattern files)
    dim <n>
    n rows over {0, *}
    vars <names>         (free cells, row-major; optional)
    pin <k> <i> <value>  (normalised entries; optional, repeatable)

A corpus directory holds one sub-directory per table with ``manifest.txt``
(key=value lines) and ``patterns.pat``, plus ``errata.txt`` at the root.
Lines starting with '#' are comments everywhere.
"""

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Mapping, Optional, Tuple, Union

from .algebra import EvolutionAlgebra
from .errors import CorpusError, ParseError
from .fieldcore import FieldSpec, Scalar, parse_field, parse_scalar
from .pattern import PermSubgroup, SupportPattern

logger = logging.getLogger(__name__)

MANIFEST_FILE = "manifest.txt"
PATTERNS_FILE = "patterns.pat"
ERRATA_FILE = "errata.txt"


def _content_lines(text: str) -> List[Tuple[int, str]]:
    lines = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append((number, line))
    return lines


def parse_matrix(text: str, field_override: Optional[FieldSpec] = None) -> EvolutionAlgebra:
    """
    Parse a structure matrix.

    Args:
        text: File contents
        field_override: Read the scalars into this field instead of the declared one

    Returns:
        The algebra

    Example:
        >>> parse_matrix("dim 2 field F7\\n0 10\\n1 0").matrix[0][1]
        Residue(3, 7)
    """
    lines = _content_lines(text)
    if not lines:
        raise ParseError("Empty matrix file")
    number, header = lines[0]
    words = header.split()
    if len(words) != 4 or words[0] != "dim" or words[2] != "field":
        raise ParseError(f"Line {number}: expected 'dim <n> field <Q|F<p>>', got {header!r}")
    try:
        n = int(words[1])
    except ValueError:
        raise ParseError(f"Line {number}: dimension {words[1]!r} is not an integer")
    if n < 1:
        raise ParseError(f"Line {number}: dimension must be positive, got {n}")
    spec = field_override or parse_field(words[3])

    body = lines[1:]
    if len(body) != n:
        raise ParseError(f"Expected {n} matrix rows, found {len(body)}")
    rows = []
    for number, line in body:
        cells = line.split()
        if len(cells) != n:
            raise ParseError(f"Line {number}: expected {n} entries, found {len(cells)}")
        try:
            rows.append(tuple(parse_scalar(cell, spec) for cell in cells))
        except ParseError as e:
            raise ParseError(f"Line {number}: {e}")
    return EvolutionAlgebra(tuple(rows), spec)


def format_matrix(A: EvolutionAlgebra) -> str:
    lines = [f"dim {A.dim} field {A.field.label}"]
    lines += [" ".join(str(x) for x in row) for row in A.matrix]
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class PatternBlock:
    """A named pattern with the names of its free cells and its pinned values."""

    name: str
    pattern: SupportPattern
    variables: Tuple[str, ...] = ()
    pins: Tuple[Tuple[int, int, str], ...] = ()

    def free_cells(self) -> List[Tuple[int, int]]:
        """Set cells without a pin, row-major, 1-based."""
        pinned = {(k, i) for k, i, _ in self.pins}
        n = self.pattern.n
        return [
            (k + 1, i + 1)
            for k in range(n)
            for i in range(n)
            if self.pattern.bits[k][i] and (k + 1, i + 1) not in pinned
        ]

    def cell_names(self) -> Dict[Tuple[int, int], str]:
        """Map from 1-based free cell to the name printed for it."""
        cells = self.free_cells()
        if self.variables and len(self.variables) != len(cells):
            raise ParseError(
                f"Block {self.name}: {len(self.variables)} names for {len(cells)} free cells"
            )
        return dict(zip(cells, self.variables))

    def instantiate(self, values: Mapping[str, Scalar], spec: FieldSpec) -> EvolutionAlgebra:
        """Replace names by ``values`` and pins by their parsed value."""
        n = self.pattern.n
        rows = [[spec.zero] * n for _ in range(n)]
        for (k, i), name in self.cell_names().items():
            if name not in values:
                raise KeyError(f"No value for {name} in block {self.name}")
            rows[k - 1][i - 1] = spec.element(values[name])
        for k, i, text in self.pins:
            rows[k - 1][i - 1] = parse_scalar(text, spec)
        return EvolutionAlgebra(tuple(tuple(row) for row in rows), spec)


def parse_pattern_blocks(text: str) -> List[PatternBlock]:
    """
    Parse one or more pattern blocks.

    Example:
        >>> [b.name for b in parse_pattern_blocks("name a\\ndim 1\\n*\\n")]
        ['a']
    """
    blocks = []
    current: Optional[Dict] = None

    def finish():
        if current is None:
            return
        rows = current["rows"]
        if len(rows) != current["dim"]:
            raise ParseError(f"Block {current['name']}: expected {current['dim']} rows, found {len(rows)}")
        pattern = SupportPattern(tuple(rows))
        for k, i, _ in current["pins"]:
            if not (1 <= k <= pattern.n and 1 <= i <= pattern.n) or not pattern.bits[k - 1][i - 1]:
                raise ParseError(f"Block {current['name']}: pin ({k},{i}) is not a set cell")
        blocks.append(PatternBlock(current["name"], pattern, tuple(current["vars"]), tuple(current["pins"])))

    pending_name = None
    for number, line in _content_lines(text):
        words = line.split()
        keyword = words[0]
        if keyword == "name":
            finish()
            current = None
            pending_name = " ".join(words[1:])
        elif keyword == "dim":
            if current is not None:
                finish()
            try:
                dim = int(words[1])
            except (IndexError, ValueError):
                raise ParseError(f"Line {number}: bad dimension line {line!r}")
            if pending_name is None:
                pending_name = f"block{len(blocks) + 1}"
            current = {"name": pending_name, "dim": dim, "rows": [], "vars": [], "pins": []}
            pending_name = None
        elif current is None:
            raise ParseError(f"Line {number}: {line!r} before any 'dim' line")
        elif keyword == "vars":
            current["vars"].extend(words[1:])
        elif keyword == "pin":
            if len(words) != 4:
                raise ParseError(f"Line {number}: expected 'pin <k> <i> <value>'")
            try:
                current["pins"].append((int(words[1]), int(words[2]), words[3]))
            except ValueError:
                raise ParseError(f"Line {number}: pin indices must be integers")
        else:
            cells = words if len(words) > 1 else list(words[0])
            if len(cells) != current["dim"] or set(cells) - {"0", "*"}:
                raise ParseError(f"Line {number}: bad pattern row {line!r}")
            current["rows"].append(tuple(c == "*" for c in cells))
    finish()
    return blocks


def read_input(path: Union[str, Path], field_override: Optional[FieldSpec] = None) -> Union[EvolutionAlgebra, SupportPattern]:
    """Read a matrix file, or a file holding a single pattern block."""
    text = Path(path).read_text(encoding="utf-8")
    first = _content_lines(text)[:1]
    if first and "field" in first[0][1].split():
        return parse_matrix(text, field_override)
    blocks = parse_pattern_blocks(text)
    if len(blocks) != 1:
        raise ParseError(f"{path}: expected one pattern, found {len(blocks)}")
    return blocks[0].pattern


def read_matrix(path: Union[str, Path], field_override: Optional[FieldSpec] = None) -> EvolutionAlgebra:
    return parse_matrix(Path(path).read_text(encoding="utf-8"), field_override)


def parse_manifest(text: str) -> Dict[str, str]:
    manifest = {}
    for number, line in _content_lines(text):
        if "=" not in line:
            raise ParseError(f"Line {number}: expected key=value, got {line!r}")
        key, value = line.split("=", 1)
        manifest[key.strip()] = value.strip()
    return manifest


def parse_errata(text: str) -> Dict[str, str]:
    """Map from allowlisted item id to its justification."""
    errata = {}
    for _, line in _content_lines(text):
        parts = line.split(None, 1)
        errata[parts[0]] = parts[1] if len(parts) > 1 else ""
    return errata


@dataclass(frozen=True)
class Table:
    """One bundled table: manifest values and its pattern blocks."""

    name: str
    manifest: Dict[str, str] = field(hash=False)
    blocks: Tuple[PatternBlock, ...]

    @property
    def kind(self) -> str:
        return self.manifest.get("kind", "")

    @property
    def label(self) -> str:
        return self.manifest.get("label", "")

    @property
    def caption(self) -> str:
        return self.manifest.get("caption", "")

    @property
    def case(self) -> Optional[str]:
        return self.manifest.get("case")

    @property
    def parameters(self) -> str:
        return self.manifest.get("parameters", "carried")

    def group(self) -> PermSubgroup:
        degree = self.blocks[0].pattern.n if self.blocks else 4
        return PermSubgroup.from_text(degree, self.manifest.get("group", ""))

    def keyed(self, prefix: str) -> Dict[str, str]:
        """Entries ``prefix.<row>`` as a map from row name to value."""
        start = prefix + "."
        return {k[len(start):]: v for k, v in self.manifest.items() if k.startswith(start)}

    def block(self, name: str) -> PatternBlock:
        for b in self.blocks:
            if b.name == name:
                return b
        raise KeyError(f"Table {self.name} has no block {name}")

    def pairs(self) -> List[Tuple[str, PatternBlock, PatternBlock]]:
        """(row, left, right) for paired tables, in row order."""
        return [(row, self.block(f"{row}.left"), self.block(f"{row}.right")) for row in self.keyed("pairing")]

    def stated(self, key: str) -> Optional[int]:
        value = self.manifest.get(f"stated_{key}")
        return int(value) if value is not None else None


@dataclass(frozen=True)
class Corpus:
    path: Path
    tables: Tuple[Table, ...]
    errata: Dict[str, str] = field(hash=False)

    def by_label(self, label: str) -> List[Table]:
        return [t for t in self.tables if t.label == label]

    def by_case(self, case: str) -> List[Table]:
        return [t for t in self.tables if t.case == case]


def load_table(directory: Path) -> Table:
    try:
        manifest = parse_manifest((directory / MANIFEST_FILE).read_text(encoding="utf-8"))
        blocks = parse_pattern_blocks((directory / PATTERNS_FILE).read_text(encoding="utf-8"))
    except OSError as e:
        raise CorpusError(f"Cannot read table {directory.name}: {e}")
    except ParseError as e:
        raise CorpusError(f"Table {directory.name} is corrupt: {e}")
    if "kind" not in manifest:
        raise CorpusError(f"Table {directory.name}: manifest has no kind")
    return Table(directory.name, manifest, tuple(blocks))


def load_corpus(path: Union[str, Path]) -> Corpus:
    """
    Load every table below ``path`` and the errata allowlist.

    Args:
        path: Corpus directory

    Returns:
        Corpus with tables sorted by directory name

    Example:
        >>> corpus = load_corpus(BUNDLED_CORPUS)
        >>> len(corpus.tables)
        11
    """
    root = Path(path)
    if not root.is_dir():
        raise CorpusError(f"Corpus directory {root} does not exist")
    directories = sorted(d for d in root.iterdir() if (d / MANIFEST_FILE).is_file())
    if not directories:
        raise CorpusError(f"No tables found in {root}")
    tables = tuple(load_table(d) for d in directories)
    errata_path = root / ERRATA_FILE
    errata = parse_errata(errata_path.read_text(encoding="utf-8")) if errata_path.is_file() else {}
    logger.info(f"Loaded {len(tables)} tables and {len(errata)} errata entries from {root}")
    return Corpus(root, tables, errata)
