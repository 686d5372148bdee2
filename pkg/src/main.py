import sys
import time
from functools import wraps
from pathlib import Path
from typing import Callable, List, Optional

import typer
from rich.console import Console
from rich.table import Table

from .beauville.search import SearchMode
from .beauville.structures import (check_beauville, check_strongly_real, make_pair, paper_structure,
                                   recipe_congruences)
from .constructions.families import (FAMILIES, PaperGroup, build_family, from_layered, load_paper_group,
                                     theta_automorphism)
from .constructions.refinement import refinement_series
from .groups.quotient import quotient_group
from .nq.triangle import TriangleParams, triangle_quotient
from .pc.expressions import parse_word
from .pc.pcp_format import format_document
from .reporting.report import (Report, cached_search, certificate_payload, group_info, series_payload, text_hash)
from .reporting.reproduce import CHECKS, run_suite
from .utils.cache import ResultCache
from .utils.config import GROUP_SETTINGS, NQ_SETTINGS, SEARCH_SETTINGS, USE_CACHE
from .utils.errors import BforgeError, CapExceededError
from .utils.logger import default_logger

logger = default_logger.getChild("CLI")
console = Console(stderr=True)

app = typer.Typer(add_completion=False, no_args_is_help=True,
                  help="Build p-groups from triangle groups and verify their Beauville structures.")

EXIT_OK, EXIT_FAILED, EXIT_PARAMS, EXIT_CAP = 0, 1, 2, 3


def exit_codes(func: Callable) -> Callable:
    """Map engine errors onto the exit-code contract"""
    @wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except CapExceededError as e:
            logger.error(str(e))
            raise typer.Exit(EXIT_CAP)
        except BforgeError as e:
            logger.error(str(e))
            raise typer.Exit(EXIT_PARAMS)
    return wrapper


def emit(report: Report, started: float) -> None:
    report.elapsed_ms = round((time.perf_counter() - started) * 1000, 1)
    report.seal()
    typer.echo(report.to_json().decode())


def new_report() -> Report:
    return Report(command=["bforge", *sys.argv[1:]])


def read_group(path: Path) -> tuple[PaperGroup, str]:
    text = path.read_text()
    return load_paper_group(text), text


def summary(title: str, rows: list[tuple[str, str]]) -> None:
    table = Table(title=title, show_header=False)
    for key, value in rows:
        table.add_row(key, value)
    console.print(table)


def write_document(text: str, out: Optional[Path], default_name: str) -> Path:
    path = out or Path(f"{default_name}.pcp")
    path.write_text(text)
    ResultCache().store_group(text)
    return path


@app.command()
@exit_codes
def construct(
    family: str = typer.Option(..., help=f"One of {', '.join(FAMILIES)}"),
    p: Optional[int] = typer.Option(None, "--p"),
    k: Optional[int] = typer.Option(None, "--k"),
    n: Optional[int] = typer.Option(None, "--n"),
    out: Optional[Path] = typer.Option(None, help="Where to write the .pcp file"),
    max_order: int = typer.Option(GROUP_SETTINGS["MAX_ORDER"], help="Largest group order to enumerate"),
):
    """Build one of the explicit families and write its presentation"""
    started = time.perf_counter()
    GROUP_SETTINGS["MAX_ORDER"] = max_order
    pg = build_family(family, p=p, k=k, n=n)
    text = format_document(pg.document())
    path = write_document(text, out, pg.name)
    report = new_report()
    report.group = group_info(pg.group)
    report.input_hashes = {"pcp": text_hash(text)}
    summary(pg.name, [("order", str(pg.group.order)), ("exponent", str(pg.group.exponent())), ("file", str(path))])
    emit(report, started)


@app.command()
@exit_codes
def nq(
    p: int = typer.Option(..., "--p"),
    k: int = typer.Option(..., "--k"),
    r: Optional[int] = typer.Option(None, "--r", help="Order of ab; defaults to q, or 3q when p = 3"),
    nilpotency_class: int = typer.Option(NQ_SETTINGS["CLASS_BOUND"], "--class"),
    out: Optional[Path] = typer.Option(None),
    max_order: int = typer.Option(NQ_SETTINGS["MAX_ORDER"], help="Largest quotient order to compute"),
):
    """Nilpotent quotient of the triangle group T(q, q, r)"""
    started = time.perf_counter()
    NQ_SETTINGS["MAX_ORDER"] = max_order
    GROUP_SETTINGS["MAX_ORDER"] = max(GROUP_SETTINGS["MAX_ORDER"], max_order)
    tp = TriangleParams(p, k, r)
    lp = triangle_quotient(tp, nilpotency_class)
    text = format_document(lp.document())
    path = write_document(text, out, lp.presentation.name)
    report = new_report()
    pg = from_layered(lp)
    report.group = group_info(pg.group)
    report.certificates.append({
        "kind": "nq",
        "triangle": tp.label,
        "class": lp.nilpotency_class,
        "stabilized": lp.stabilized,
        "weights": list(lp.weights),
    })
    report.input_hashes = {"pcp": text_hash(text)}
    summary(tp.label, [("class", str(lp.nilpotency_class)), ("order", str(lp.order)),
                       ("stabilized", str(lp.stabilized)), ("file", str(path))])
    emit(report, started)


def _pair(pg: PaperGroup, text: str):
    G = pg.group
    words = text.split(";")
    if len(words) != 2:
        raise typer.BadParameter(f"expected 'WX;WY', got {text!r}")
    bindings = {name: G.generator(i) for i, name in enumerate(G.presentation.names)}
    bindings.update(pg.dist_gens)
    x, y = (G.evaluate(parse_word(w.strip()), bindings) for w in words)
    return make_pair(G, x, y)


@app.command()
@exit_codes
def verify(
    group: Path = typer.Option(..., exists=True, dir_okay=False, help=".pcp file"),
    pair1: Optional[str] = typer.Option(None, help="'WX;WY' words for the first pair"),
    pair2: Optional[str] = typer.Option(None, help="'WX;WY' words for the second pair"),
    use_paper_structure: bool = typer.Option(False, "--paper-structure", help="{x,y} and {(xy)^n1 x, (xy)^n2 x}"),
    n1: int = typer.Option(1, "--n1"),
    n2: Optional[int] = typer.Option(None, "--n2"),
    strong: bool = typer.Option(False, help="Also check the structure is strongly real"),
    search_conjugators: bool = typer.Option(False, help="Search all of G for the conjugators"),
):
    """Check a pair of generating pairs; exit 0 only when verified"""
    started = time.perf_counter()
    pg, text = read_group(group)
    G = pg.group
    if use_paper_structure:
        if n2 is None:
            recipe = recipe_congruences(pg.prime)
            n2 = recipe[2] if recipe else 2
        structure = paper_structure(pg, n1, n2)
        p1, p2 = structure.pair1, structure.pair2
    elif pair1 and pair2:
        p1, p2 = _pair(pg, pair1), _pair(pg, pair2)
    else:
        raise typer.BadParameter("give --pair1 and --pair2, or --paper-structure")
    cert = check_beauville(G, p1, p2)
    if strong:
        if pg.theta is None:
            logger.warning(f"{G.name} has no inversion automorphism")
            cert.strongly_real = False
            cert.diagnostic = "; ".join(filter(None, [cert.diagnostic, "no inversion automorphism on G"]))
        else:
            cert = check_strongly_real(G, cert, pg.theta, search_conjugators)
    verified = cert.beauville and (cert.strongly_real or not strong)
    report = new_report()
    report.group = group_info(G)
    report.certificates.append(certificate_payload(G, cert))
    report.input_hashes = {"group": text_hash(text)}
    rows = [("beauville", str(cert.beauville))]
    if strong:
        rows.append(("strongly real", str(cert.strongly_real)))
    if cert.diagnostic:
        rows.append(("diagnostic", cert.diagnostic))
    summary(G.name, rows)
    emit(report, started)
    raise typer.Exit(EXIT_OK if verified else EXIT_FAILED)


@app.command()
@exit_codes
def search(
    group: Path = typer.Option(..., exists=True, dir_okay=False),
    mode: SearchMode = typer.Option(SearchMode.find),
    jobs: int = typer.Option(SEARCH_SETTINGS["JOBS"], help="Worker processes for the disjointness scan"),
    max_order: Optional[int] = typer.Option(None, help="Largest group order to search"),
    progress: bool = typer.Option(False, help="Show a progress bar"),
    use_cache: bool = typer.Option(USE_CACHE, "--cache/--no-cache", help="Reuse an earlier search of this group"),
):
    """Exhaustive search; prove-none exits 1 if a structure turns up"""
    started = time.perf_counter()
    pg, text = read_group(group)
    G = pg.group
    payload = cached_search(G, text, mode, theta=pg.theta, jobs=jobs, cap=max_order, progress=progress,
                            cache=ResultCache() if use_cache else None)
    report = new_report()
    report.group = group_info(G)
    report.certificates.append(payload)
    report.input_hashes = {"group": text_hash(text)}
    summary(G.name, [("mode", mode.value), ("found", str(payload["found"])),
                     ("distinct sigma", str(payload["distinct_sigma"])),
                     ("generating pairs", str(payload["generating_pairs"]))])
    emit(report, started)
    succeeded = not payload["found"] if mode is SearchMode.prove_none else payload["found"]
    raise typer.Exit(EXIT_OK if succeeded else EXIT_FAILED)


@app.command()
@exit_codes
def series(
    group: Path = typer.Option(..., exists=True, dir_okay=False),
    start: int = typer.Option(..., "--from", help="Top lower central term"),
    stop: int = typer.Option(..., "--to", help="Bottom lower central term"),
    verdicts: bool = typer.Option(True, help="Check the standard structure on each small quotient"),
):
    """Refine gamma_from > ... > gamma_to into steps of prime index"""
    started = time.perf_counter()
    pg, text = read_group(group)
    G = pg.group
    if stop <= start:
        raise typer.BadParameter("--to must exceed --from")
    report = new_report()
    report.group = group_info(G)
    report.input_hashes = {"group": text_hash(text)}
    recipe = recipe_congruences(pg.prime)
    for i in range(start, stop):
        refined = refinement_series(pg, i)
        payload = series_payload(refined)
        payload["weight"] = i
        if verdicts and recipe is not None and pg.theta is not None:
            for term, normal in zip(payload["terms"], refined.terms):
                term["strongly_real"] = _quotient_verdict(pg, normal, recipe[1], recipe[2])
        report.certificates.append(payload)
        console.print(f"weight {i}: " + " > ".join(refined.labels))
    emit(report, started)


def _quotient_verdict(pg: PaperGroup, normal, n1: int, n2: int) -> Optional[bool]:
    """Strongly real verdict for the standard structure on G/N, None when G/N is too big or trivial"""
    if normal.size == pg.group.order:
        return None
    Q, projection = quotient_group(pg.group, normal)
    if Q.order > SEARCH_SETTINGS["FULL_SIGMA_CAP"]:
        return None
    quotient = PaperGroup(pg.family, dict(pg.params), Q, {"x": projection(pg.x), "y": projection(pg.y)})
    quotient.theta = theta_automorphism(quotient)
    structure = paper_structure(quotient, n1, n2)
    cert = check_beauville(Q, structure.pair1, structure.pair2)
    return bool(check_strongly_real(Q, cert, quotient.theta).strongly_real)


@app.command()
@exit_codes
def reproduce(
    only: Optional[List[str]] = typer.Option(None, help=f"Run only these checks: {', '.join(CHECKS)}"),
    use_cache: bool = typer.Option(USE_CACHE, "--cache/--no-cache", help="Reuse earlier searches of the same groups"),
):
    """Run the full reproduction suite"""
    started = time.perf_counter()
    unknown = [name for name in only or [] if name not in CHECKS]
    if unknown:
        raise typer.BadParameter(f"unknown checks {', '.join(unknown)}")
    results = run_suite(only, cache=ResultCache() if use_cache else None)
    report = new_report()
    report.certificates = [r.model_dump(exclude={"elapsed_ms"}) for r in results]
    table = Table(title="reproduce")
    table.add_column("check")
    table.add_column("result")
    table.add_column("seconds", justify="right")
    for r in results:
        table.add_row(r.name, "[green]passed[/]" if r.passed else "[red]FAILED[/]", f"{r.elapsed_ms / 1000:.1f}")
    console.print(table)
    emit(report, started)
    raise typer.Exit(EXIT_OK if all(r.passed for r in results) else EXIT_FAILED)


if __name__ == "__main__":
    app()
