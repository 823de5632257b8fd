"""Command line front end

Reads complex documents, runs the dimension formulas and the homology oracle on them, generates
test complexes and writes reports.

Complex documents
-----------------

A document (file extension `.cplx`) describes a ring and a finite free complex over it::

    # Koszul complex on x, y
    name koszul_xy
    ring Fp(32003)[x,y] order grevlex
    degrees 0..2
    ranks 1,2,1
    diff 1:
      [x, y]
    diff 2:
      [-y]
      [x]

* `#` starts a comment that runs to the end of the line; blank lines are ignored.
* `name <text>` is optional.
* `ring <field>[<v1>,<v2>,...] order <lex|grevlex>`, where the field is `QQ` or `Fp(<prime>)`.
* `degrees <a>..<b>` with integers a <= b + 1 (`0..-1` is the empty complex).
* `ranks <f_a>,...,<f_b>`.
* For each n in [a+1, b] a block `diff <n>:` followed by f_{n-1} bracketed rows of f_n
  comma-separated polynomials. Rows may also sit on the `diff` line, several per line. A map
  with zero columns has rows `[]`; a map with zero rows has no rows at all.

Polynomials are sums of terms like `-3/2*x^2*y`: an integer or rational coefficient and powers of
declared variables, `*` and `^1` being optional. Identifiers next to each other need a `*` or
whitespace between them. The unicode minus is accepted.

Exit codes: 0 success, 1 verification mismatch, 2 input error, 3 Gröbner basis time budget
exceeded.

"""
import argparse
import json
import logging
import multiprocessing
import re
import sys
import time

import numpy as np

from fitdim_utils import complexes, dimform, generate, homoracle, utils
from fitdim_utils.database.main import ResultsDataBase
from fitdim_utils.exceptions import ConfigError, FitdimError, GroebnerTimeout, ParseError
from fitdim_utils.groebner import time_budget
from fitdim_utils.matpoly import MapOfFree
from fitdim_utils.polyring import CoefficientField, PolyRing

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1
EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_INPUT = 2
EXIT_TIMEOUT = 3

_RING = re.compile(r"ring\s+(?P<field>QQ|Fp\(\s*\d+\s*\))\s*\[(?P<vars>[^\]]*)\]"
                   r"(?:\s+order\s+(?P<order>\w+))?\s*$")
_DEGREES = re.compile(r"degrees\s+(?P<low>[-−]?\d+)\s*\.\.\s*(?P<high>[-−]?\d+)\s*$")
_DIFF = re.compile(r"diff\s+(?P<degree>[-−]?\d+)\s*:")


def parse_input(text, order=None):
    """Parse a complex document

    Args:
        text (str): The document.
        order (str): Monomial order that overrides the order of the document.

    Returns:
        ~fitdim_utils.complexes.FiniteFreeComplex:
            The validated complex.

    Raises:
        ~fitdim_utils.exceptions.ParseError: On syntax errors and unknown variables.
        ~fitdim_utils.exceptions.ComplexError: If two differentials do not compose to zero.

    """
    parser = _DocumentParser(text, order)
    cplx = parser.parse()
    complexes.validate_complex(cplx)
    return cplx


def render_document(cplx):
    """Complex document of a complex; parse_input(render_document(c)) == c"""
    ring = cplx.ring
    lines = []
    if cplx.name:
        lines.append(f"name {cplx.name}")
    lines.append(f"ring {ring.field.name}[{','.join(ring.variables)}] order {ring.order.kind}")
    lines.append(f"degrees {cplx.low}..{cplx.high}")
    lines.append("ranks " + ",".join(str(rank) for rank in cplx.ranks))
    for degree, diff in sorted(cplx.differentials.items()):
        lines.append(f"diff {degree}:")
        for row in diff.entries:
            lines.append("  [" + ", ".join(entry.to_string() for entry in row) + "]")
    return "\n".join(lines) + "\n"


class _DocumentParser:
    def __init__(self, text, order):
        self.lines = text.splitlines()
        self.order = order
        self.name = None
        self.ring = None
        self.low = self.high = None
        self.ranks = None
        self.rows = {}
        self.current = None

    def parse(self):
        for number, raw in enumerate(self.lines, start=1):
            line = raw.split("#", 1)[0].rstrip()
            stripped = line.lstrip()
            if not stripped:
                continue
            offset = len(line) - len(stripped) + 1
            keyword = stripped.split(None, 1)[0]
            if keyword == "name":
                self.name = stripped[4:].strip() or None
            elif keyword == "ring":
                self._ring(stripped, number, offset)
            elif keyword == "degrees":
                self._degrees(stripped, number, offset)
            elif keyword == "ranks":
                self._ranks(stripped, number, offset)
            elif keyword.startswith("diff"):
                self._diff(stripped, number, offset)
            elif stripped.startswith("["):
                self._row_groups(stripped, number, offset)
            else:
                raise ParseError(f"Unknown keyword '{keyword}'", number, offset)
        return self._build()

    def _ring(self, text, number, offset):
        match = _RING.match(text)
        if match is None:
            raise ParseError("Expected 'ring <QQ|Fp(p)>[vars] order <lex|grevlex>'", number,
                             offset)
        field_name = re.sub(r"\s+", "", match.group("field"))
        try:
            field = CoefficientField.from_string(field_name)
        except ValueError as err:
            raise ParseError(str(err), number, offset + match.start("field")) from err
        variables = [var.strip() for var in match.group("vars").split(",") if var.strip()]
        order = self.order or match.group("order") or "grevlex"
        try:
            self.ring = PolyRing(field, variables, order)
        except ValueError as err:
            raise ParseError(str(err), number, offset + match.start("vars")) from err

    def _degrees(self, text, number, offset):
        match = _DEGREES.match(text)
        if match is None:
            raise ParseError("Expected 'degrees <a>..<b>'", number, offset)
        self.low = _int(match.group("low"))
        self.high = _int(match.group("high"))
        if self.high < self.low - 1:
            raise ParseError(f"Invalid degree range {self.low}..{self.high}", number, offset)

    def _ranks(self, text, number, offset):
        values = text[len("ranks"):].strip()
        try:
            self.ranks = [int(value) for value in values.split(",")] if values else []
        except ValueError as err:
            raise ParseError("Ranks must be comma-separated integers", number, offset) from err
        if any(rank < 0 for rank in self.ranks):
            raise ParseError("Ranks must be non-negative", number, offset)

    def _diff(self, text, number, offset):
        match = _DIFF.match(text)
        if match is None:
            raise ParseError("Expected 'diff <n>:'", number, offset)
        if self.ring is None or self.low is None or self.ranks is None:
            raise ParseError("'ring', 'degrees' and 'ranks' must precede the differentials",
                             number, offset)
        degree = _int(match.group("degree"))
        if not self.low + 1 <= degree <= self.high:
            raise ParseError(f"Differential degree {degree} outside {self.low + 1}..{self.high}",
                             number, offset)
        if degree in self.rows:
            raise ParseError(f"Differential {degree} given twice", number, offset)
        self.current = degree
        self.rows[degree] = []
        rest = text[match.end():]
        if rest.strip():
            self._row_groups(rest.strip(), number,
                             offset + match.end() + len(rest) - len(rest.lstrip()))

    def _row_groups(self, text, number, offset):
        if self.current is None:
            raise ParseError("Row outside of a 'diff' block", number, offset)
        idx = 0
        while idx < len(text):
            if text[idx].isspace():
                idx += 1
                continue
            if text[idx] != "[":
                raise ParseError("Expected '['", number, offset + idx)
            end = text.find("]", idx)
            if end < 0:
                raise ParseError("Missing ']'", number, offset + idx)
            self.rows[self.current].append(self._row(text[idx + 1:end], number, offset + idx + 1))
            idx = end + 1

    def _row(self, text, number, offset):
        if not text.strip():
            return []
        entries = []
        start = 0
        for piece in text.split(","):
            column = offset + start
            if not piece.strip():
                raise ParseError("Empty matrix entry", number, column)
            entries.append(self.ring.parse(piece, line=number, column=column))
            start += len(piece) + 1
        return entries

    def _build(self):
        if self.ring is None:
            raise ParseError("Missing 'ring' line", len(self.lines), 1)
        if self.low is None:
            raise ParseError("Missing 'degrees' line", len(self.lines), 1)
        if self.ranks is None:
            raise ParseError("Missing 'ranks' line", len(self.lines), 1)
        if len(self.ranks) != self.high - self.low + 1:
            raise ParseError(f"Expected {self.high - self.low + 1} ranks for degrees "
                             f"{self.low}..{self.high}, got {len(self.ranks)}", len(self.lines), 1)
        differentials = {}
        for degree in range(self.low + 1, self.high + 1):
            rows = self.rows.get(degree)
            target, source = self._rank(degree - 1), self._rank(degree)
            if rows is None:
                raise ParseError(f"Missing differential {degree}", len(self.lines), 1)
            if len(rows) != target or any(len(row) != source for row in rows):
                raise ParseError(f"Differential {degree} must have {target} rows of {source} "
                                 f"entries", len(self.lines), 1)
            differentials[degree] = MapOfFree(self.ring, target, source, rows)
        return complexes.FiniteFreeComplex(self.ring, self.low, self.high, self.ranks,
                                           differentials, name=self.name)

    def _rank(self, degree):
        if self.low <= degree <= self.high:
            return self.ranks[degree - self.low]
        return 0


class VerificationOutcome:
    """Dimensions of one complex along the independent paths and their comparison

    Attributes:
        dim_fitting (ExtendedDim): dim F from the Fitting ideals.
        dim_homology (ExtendedDim): dim F from the homology.
        dim_dual (ExtendedDim): dim Hom(F, R) from the expected ranks of F.
        dim_dual_of_dual_complex (ExtendedDim): dim Hom(F, R) computed on the dual complex.
        acyclic (bool): Outcome of the rank and grade test.
        homology_acyclic (bool): Whether the homology vanishes above the lowest degree.
        failures (list): Messages of all failed cross-checks.
        agree (bool): Whether there are no failures.
        elapsed_ms (int): Run time.

    """
    def __init__(self, cplx, dim_fitting, dim_homology, dim_dual, dim_dual_of_dual_complex,
                 acyclic, homology_acyclic, failures, elapsed_ms):
        self.dim_fitting = dim_fitting
        self.dim_homology = dim_homology
        self.dim_dual = dim_dual
        self.dim_dual_of_dual_complex = dim_dual_of_dual_complex
        self.acyclic = acyclic
        self.homology_acyclic = homology_acyclic
        self.failures = list(failures)
        self.agree = not self.failures
        self.elapsed_ms = elapsed_ms
        self.nvars = cplx.ring.nvars
        self.characteristic = cplx.ring.field.characteristic
        self.low = cplx.low
        self.high = cplx.high


def verify_complex(cplx):
    """Check the dimension formulas of a complex against its homology

    Compares dim F from the Fitting ideals with dim F from the homology, the dual dimension with the
    dimension of the dual complex, the rank and grade test with the homology, and the homology
    bounds of the dual dimension.

    Args:
        cplx (~fitdim_utils.complexes.FiniteFreeComplex): The complex.

    Returns:
        VerificationOutcome:
            The outcome.

    """
    start = time.perf_counter()
    dim_fitting = dimform.dim_via_fitting(cplx).result
    dim_homology, table = homoracle.dim_via_homology(cplx)
    dim_dual = dimform.dim_dual_via_fitting(cplx).result
    dim_dual_of_dual = dimform.dim_via_fitting(complexes.dual_complex(cplx)).result
    acyclic = bool(dimform.is_acyclic(cplx))
    failures = []
    if dim_fitting != dim_homology:
        failures.append(f"dim_fitting = {dim_fitting} but dim_homology = {dim_homology}")
    if dim_dual != dim_dual_of_dual:
        failures.append(f"dim_dual = {dim_dual} but the dual complex has dim {dim_dual_of_dual}")
    if acyclic != table.is_acyclic():
        failures.append(f"rank and grade test says acyclic = {acyclic}, homology says "
                        f"{table.is_acyclic()}")
    failures.extend(dimform.check_bounds(cplx, table).violations())
    elapsed_ms = int((time.perf_counter() - start) * 1000)
    outcome = VerificationOutcome(cplx, dim_fitting, dim_homology, dim_dual, dim_dual_of_dual,
                                  acyclic, table.is_acyclic(), failures, elapsed_ms)
    logger.info("Verified %s: dim %s / %s, %s", cplx.name or repr(cplx), dim_fitting,
                dim_homology, "agree" if outcome.agree else "MISMATCH")
    return outcome


def build_report(cplx, timings=False):
    """JSON-serializable report of a complex"""
    clock = {}
    start = time.perf_counter()
    main = dimform.dim_via_fitting(cplx)
    clock['fitting'] = time.perf_counter()
    dual = dimform.dim_dual_via_fitting(cplx)
    clock['dual'] = time.perf_counter()
    _, table = homoracle.dim_via_homology(cplx)
    clock['homology'] = time.perf_counter()
    bounds = dimform.check_bounds(cplx, table)
    acyclic = dimform.is_acyclic(cplx)
    clock['checks'] = time.perf_counter()
    codim = dimform.bh_codimension(cplx)
    report = {
        'schema_version': SCHEMA_VERSION,
        'ring': str(cplx.ring),
        'complex_name': cplx.name,
        'degrees': [cplx.low, cplx.high],
        'ranks': list(cplx.ranks),
        'dim': main.result.to_json(),
        'dim_dual': dual.result.to_json(),
        'bh_codim': codim.to_json(),
        'foxby_codim': homoracle.foxby_codimension(table).to_json(),
        'per_degree_terms': {main.formula: [term.to_json() for term in main.terms],
                             dual.formula: [term.to_json() for term in dual.terms]},
        'homology': table.to_json(),
        'bounds': bounds.to_json(),
        'acyclic': acyclic.to_json(),
        'timings_ms': None,
        }
    if timings:
        previous = start
        report['timings_ms'] = {}
        for key, stamp in clock.items():
            report['timings_ms'][key] = int((stamp - previous) * 1000)
            previous = stamp
    return report


def run_command(command, options, out=None):
    """Run a subcommand

    Args:
        command (str): One of 'dim', 'codim', 'homology', 'verify', 'gen', 'report'.
        options (~argparse.Namespace): Parsed command line options.
        out (file): Output stream, standard output by default.

    Returns:
        int:
            Exit status.

    """
    out = sys.stdout if out is None else out
    try:
        cfg = utils.get_cfg(options.config)
        _apply_options(cfg, options)
        with time_budget(cfg['timeout_ms']):
            return _COMMANDS[command](cfg, options, out)
    except GroebnerTimeout as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_TIMEOUT
    except (FitdimError, OSError, OverflowError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT


def _dim(cfg, options, out):
    cplx = _read(options.file, options)
    report = dimform.dim_via_fitting(cplx)
    if options.json:
        _dump(report.to_json(), out)
        return EXIT_OK
    print(f"dim = {report.result}", file=out)
    for term in report.terms:
        if cplx.low <= term.degree <= cplx.high:
            print(_term_row("s", term), file=out)
    return EXIT_OK


def _codim(cfg, options, out):
    cplx = _read(options.file, options)
    report = dimform.dim_dual_via_fitting(cplx)
    codim = dimform.bh_codimension(cplx)
    if options.json:
        data = report.to_json()
        data['bh_codim'] = codim.to_json()
        _dump(data, out)
        return EXIT_OK
    print(f"dim_dual = {report.result}, bh_codim = {codim}", file=out)
    for term in report.terms:
        print(_term_row("r", term), file=out)
    return EXIT_OK


def _homology(cfg, options, out):
    cplx = _read(options.file, options)
    dim, table = homoracle.dim_via_homology(cplx)
    if options.json:
        _dump(table.to_json(), out)
        return EXIT_OK
    for degree, entry in sorted(table.entries.items()):
        presentation = entry.presentation
        print(f"H_{degree}: {presentation.generator_count} generators, "
              f"{presentation.relation_count} relations, dim {entry.dim}", file=out)
    print(f"inf H = {table.inf_h}, sup H = {table.sup_h}, dim = {dim}", file=out)
    return EXIT_OK


def _report(cfg, options, out):
    cplx = _read(options.file, options)
    report = build_report(cplx, timings=options.timings)
    if options.json:
        _dump(report, out)
        return EXIT_OK
    print(f"{report['complex_name'] or options.file}: {report['ring']}", file=out)
    print(f"dim = {report['dim']}, dim_dual = {report['dim_dual']}, "
          f"bh_codim = {report['bh_codim']}, acyclic = {report['acyclic']['acyclic']}", file=out)
    return EXIT_OK


def _verify(cfg, options, out):
    if options.random:
        return _verify_random(cfg, options, out)
    if options.file is None:
        raise ConfigError("verify needs a file or --random")
    cplx = _read(options.file, options)
    outcome = verify_complex(cplx)
    _record(cfg, [(render_document(cplx), outcome, None, cplx.name)])
    print(f"dim_fitting = {outcome.dim_fitting}, dim_homology = {outcome.dim_homology}",
          file=out)
    if not outcome.agree:
        for failure in outcome.failures:
            print(f"# {failure}", file=out)
        print(render_document(cplx), end="", file=out)
        return EXIT_MISMATCH
    return EXIT_OK


def _verify_random(cfg, options, out):
    seed = options.seed if options.seed is not None else 0
    params = _random_params(cfg)
    jobs = [(seed, index, params, cfg['timeout_ms']) for index in range(options.count)]
    if cfg['workers'] > 1:
        with multiprocessing.Pool(cfg['workers']) as pool:
            results = pool.map(_verify_job, jobs)
    else:
        results = [_verify_job(job) for job in jobs]
    agree = sum(1 for _, outcome in results if outcome.agree)
    _record(cfg, [(document, outcome, generate.complex_seed(seed, idx), f"random_{seed}_{idx}")
                  for idx, (document, outcome) in enumerate(results)])
    print(f"{agree}/{len(results)} agree", file=out)
    for document, outcome in results:
        if not outcome.agree:
            print("", file=out)
            for failure in outcome.failures:
                print(f"# {failure}", file=out)
            print(document, end="", file=out)
    return EXIT_OK if agree == len(results) else EXIT_MISMATCH


def _verify_job(job):
    seed, index, params, timeout_ms = job
    ring = generate.make_ring(params['vars'], params['field'], params['order'])
    rng = np.random.default_rng(generate.complex_seed(seed, index))
    with time_budget(timeout_ms):
        cplx = generate.random_complex(ring, rng, params['maxdeg'], params['maxrank'],
                                       params['len'], params['blocks'], params['basis_changes'])
        cplx.name = f"random_{seed}_{index}"
        return render_document(cplx), verify_complex(cplx)


def _gen(cfg, options, out):
    params = _random_params(cfg)
    ring = generate.make_ring(params['vars'], params['field'], params['order'])
    if options.family == "koszul":
        if not options.polys:
            raise ConfigError("gen koszul needs at least one polynomial")
        documents = [render_document(complexes.koszul_complex(ring, options.polys))]
    else:
        seed = options.seed if options.seed is not None else 0
        suite = generate.random_suite(seed, options.count, params['vars'], params['maxdeg'],
                                      params['maxrank'], params['len'], params['blocks'],
                                      params['basis_changes'], params['field'], params['order'])
        documents = [render_document(cplx) for cplx in suite]
    if options.output is None:
        print("\n".join(documents), end="", file=out)
        return EXIT_OK
    if len(documents) == 1 and options.output.endswith(".cplx"):
        paths = [options.output]
    else:
        folder = utils.make_folder(options.output)
        paths = [folder + f"{options.family}_{idx}.cplx" for idx in range(len(documents))]
    for path, document in zip(paths, documents):
        with open(path, "w", encoding="utf-8") as outfile:
            outfile.write(document)
        print(path, file=out)
    return EXIT_OK


_COMMANDS = {
    'dim': _dim,
    'codim': _codim,
    'homology': _homology,
    'report': _report,
    'verify': _verify,
    'gen': _gen,
    }


def make_parser():
    """Argument parser of the fitdim command"""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="yaml configuration file")
    common.add_argument("--order", choices=["lex", "grevlex"], help="monomial order")
    common.add_argument("--json", action="store_true", help="emit JSON")
    common.add_argument("--timeout-ms", type=int, help="time budget per Gröbner basis")
    common.add_argument("--timings", action="store_true", help="include timings in reports")
    common.add_argument("--log-level", help="logging level")

    random_opts = argparse.ArgumentParser(add_help=False)
    random_opts.add_argument("--seed", type=int, help="random seed")
    random_opts.add_argument("--count", type=int, default=1, help="number of complexes")
    random_opts.add_argument("--vars", type=int, help="number of variables")
    random_opts.add_argument("--maxdeg", type=int, help="largest entry degree")
    random_opts.add_argument("--maxrank", type=int, help="largest rank")
    random_opts.add_argument("--len", type=int, help="largest length b - a")
    random_opts.add_argument("--field", help="QQ or Fp(p)")
    random_opts.add_argument("--workers", type=int, help="worker processes")

    parser = argparse.ArgumentParser(prog="fitdim", description="Dimension of finite free "
                                     "complexes from the ideals of minors of their differentials")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (("dim", "dimension of a complex"),
                            ("codim", "dimension of the dual and codimension"),
                            ("homology", "homology of a complex"),
                            ("report", "full report of a complex")):
        command = sub.add_parser(name, parents=[common], help=help_text)
        command.add_argument("file", help="complex document")
    verify = sub.add_parser("verify", parents=[common, random_opts],
                            help="compare the formulas with the homology")
    verify.add_argument("file", nargs="?", help="complex document")
    verify.add_argument("--random", action="store_true", help="verify random complexes")
    verify.add_argument("--db", help="SQLite file recording the runs")
    gen = sub.add_parser("gen", parents=[common, random_opts], help="write complex documents")
    gen.add_argument("family", choices=["koszul", "random"])
    gen.add_argument("polys", nargs="*", help="polynomials of the Koszul complex")
    gen.add_argument("--output", help="output file or folder")
    return parser


def main(argv=None):
    """Entry point of the fitdim command"""
    parser = make_parser()
    options = parser.parse_args(argv)
    try:
        cfg = utils.get_cfg(options.config)
    except ConfigError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT
    utils.setup_logging(options.log_level or cfg['log_level'])
    return run_command(options.command, options)


def _apply_options(cfg, options):
    if getattr(options, "order", None):
        cfg['order'] = options.order
    if getattr(options, "timeout_ms", None) is not None:
        cfg['timeout_ms'] = options.timeout_ms
    for key in ("vars", "maxdeg", "maxrank", "len"):
        if getattr(options, key, None) is not None:
            cfg['random'][key] = getattr(options, key)
    if getattr(options, "field", None):
        cfg['field'] = options.field
    if getattr(options, "workers", None) is not None:
        cfg['workers'] = options.workers
    if getattr(options, "db", None):
        cfg['database'] = options.db
    utils.check_cfg(cfg)


def _random_params(cfg):
    params = dict(cfg['random'])
    params['field'] = cfg['field']
    params['order'] = cfg['order']
    return params


def _read(path, options):
    with open(path, "rb") as infile:
        raw = infile.read()
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError as err:
        line = raw.count(b"\n", 0, err.start) + 1
        column = err.start - (raw.rfind(b"\n", 0, err.start) + 1) + 1
        raise ParseError(f"{path} is not valid UTF-8", line, column) from err
    return parse_input(text, order=getattr(options, "order", None))


def _record(cfg, rows):
    if not cfg['database']:
        return
    with ResultsDataBase(cfg['database']) as data_base:
        for document, outcome, seed, name in rows:
            data_base.add_run(document, outcome, seed=seed, name=name)


def _dump(data, out):
    print(json.dumps(data, sort_keys=True, indent=2), file=out)


def _term_row(label, term):
    return (f"n = {term.degree}: {label} = {term.size}, {term.generators} minors, "
            f"dim R/I = {term.dim_quotient}, term = {term.term}")


def _int(text):
    return int(text.replace("−", "-"))


if __name__ == "__main__":
    sys.exit(main())
