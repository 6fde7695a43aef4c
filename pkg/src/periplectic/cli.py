"""Command line front end.

Commands: normalize, mul, verify, render, pbw.  Every command takes --json
for machine-readable output.  All arithmetic is exact; coefficients print as
rational strings.
"""

import json
import os
import sys

import click

from . import affine, brauer, documents, render, verify, wordparse


def _echo_doc(doc, as_json):
    click.echo(documents.dumps(doc, compact=as_json))


def _read_doc(path):
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, "r", encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise click.ClickException(f"cannot read {path}: {exc}")
    try:
        return documents.from_document(documents.loads(text)), documents.loads(text)
    except (documents.DocumentError, ValueError) as exc:
        raise click.ClickException(f"{path}: {exc}")


def _color_ok():
    return sys.stdout.isatty() and not os.environ.get("NO_COLOR")


def _report(records, as_json):
    records = sorted(records, key=lambda r: r["name"])
    failed = [r for r in records if not r["pass"]]
    summary = {
        "checks": len(records),
        "failed": len(failed),
        "all_pass": not failed,
        "results": [{"name": r["name"], "pass": r["pass"], "detail": r["detail"]}
                    for r in records],
    }
    if as_json:
        click.echo(json.dumps(summary, separators=(",", ":")))
    else:
        paint = _color_ok()
        for r in records:
            word = "PASS" if r["pass"] else "FAIL"
            if paint:
                word = click.style(word, fg="green" if r["pass"] else "red")
            tail = f"  ({r['detail']})" if r["detail"] else ""
            click.echo(f"{word}  {r['name']}{tail}")
        click.echo(json.dumps({k: summary[k] for k in
                               ("checks", "failed", "all_pass")},
                              separators=(",", ":")))
    return 0 if not failed else 1


@click.group()
def main():
    """Exact computations in an affine diagram algebra of periplectic type."""


@main.command()
@click.option("--d", "d", type=int, required=True, help="number of strands")
@click.option("--json", "as_json", is_flag=True, help="compact JSON output")
@click.argument("expression")
def normalize(d, as_json, expression):
    """Rewrite EXPRESSION into the regular-monomial normal form."""
    if d < 1:
        raise click.ClickException("--d must be at least 1")
    try:
        parsed = wordparse.parse_expression(expression, d)
    except wordparse.WordParseError as exc:
        raise click.ClickException(str(exc))
    acc = affine.PdElement.zero(d)
    for coeff, word in parsed:
        acc = acc.add(affine.normalize(list(word), d).scaled(coeff))
    _echo_doc(documents.to_document(acc), as_json)


@main.command()
@click.option("--d", "d", type=int, default=None,
              help="expected strand count (checked against the documents)")
@click.option("--algebra", type=click.Choice(["affine", "brauer"]),
              default="affine", show_default=True)
@click.option("--json", "as_json", is_flag=True, help="compact JSON output")
@click.argument("doc_a")
@click.argument("doc_b")
def mul(d, algebra, as_json, doc_a, doc_b):
    """Multiply two element documents (files, or - for stdin)."""
    xa, raw_a = _read_doc(doc_a)
    xb, raw_b = _read_doc(doc_b)
    for raw, path in ((raw_a, doc_a), (raw_b, doc_b)):
        if raw["kind"] != algebra:
            raise click.ClickException(
                f"{path}: kind {raw['kind']!r} does not match --algebra {algebra}")
        if d is not None and raw["d"] != d:
            raise click.ClickException(
                f"{path}: document has d={raw['d']}, expected {d}")
    if raw_a["d"] != raw_b["d"]:
        raise click.ClickException(
            f"strand counts differ: {raw_a['d']} vs {raw_b['d']}")
    if algebra == "affine":
        prod = affine.multiply(xa, xb)
    else:
        prod = brauer.multiply(xa, xb)
    _echo_doc(documents.to_document(prod), as_json)


_VERIFY_CAPS = {"n": 4, "m": 3, "d": 3, "max_degree": 2}


@main.command(name="verify")
@click.option("--suite", type=click.Choice(sorted(verify.SUITES)), required=True)
@click.option("--n", "n", type=int, default=2, show_default=True)
@click.option("--m", "m", type=int, default=0, show_default=True)
@click.option("--d", "d", type=int, default=2, show_default=True)
@click.option("--max-degree", "max_degree", type=int, default=1,
              show_default=True)
@click.option("--json", "as_json", is_flag=True, help="JSON summary only")
def verify_cmd(suite, n, m, d, max_degree, as_json):
    """Run one verification suite and report PASS/FAIL per check."""
    params = {"n": n, "m": m, "d": d, "max_degree": max_degree}
    lows = {"n": 1, "m": 0, "d": 1, "max_degree": 0}
    for key in verify.SUITES[suite]:
        if params[key] > _VERIFY_CAPS[key]:
            raise click.ClickException(
                f"--{key.replace('_', '-')} {params[key]} exceeds the cap "
                f"{_VERIFY_CAPS[key]}; matrix sizes grow as (2n)^(m+d), so "
                f"verification is restricted to desk scale")
        if params[key] < lows[key]:
            raise click.ClickException(
                f"--{key.replace('_', '-')} must be at least {lows[key]}")
    records = verify.run_suite(suite, **{k: params[k]
                                         for k in verify.SUITES[suite]})
    sys.exit(_report(records, as_json))


@main.command(name="render")
@click.option("--format", "fmt", type=click.Choice(["svg", "ascii"]),
              default="ascii", show_default=True)
@click.option("--json", "as_json", is_flag=True,
              help="wrap the drawing in a JSON object")
@click.argument("document")
def render_cmd(fmt, as_json, document):
    """Draw every term of an element document (file, or - for stdin)."""
    _, raw = _read_doc(document)
    try:
        drawing = (render.render_svg(raw) if fmt == "svg"
                   else render.render_ascii(raw))
    except documents.DocumentError as exc:
        raise click.ClickException(str(exc))
    if as_json:
        click.echo(json.dumps({"format": fmt, "content": drawing},
                              separators=(",", ":")))
    else:
        click.echo(drawing, nl=not drawing.endswith("\n"))


@main.command(name="pbw")
@click.option("--d", "d", type=int, required=True)
@click.option("--max-degree", "max_degree", type=int, required=True)
@click.option("--n", "n", type=int, required=True,
              help="rank used for the faithfulness window")
@click.option("--json", "as_json", is_flag=True)
def pbw_cmd(d, max_degree, n, as_json):
    """Check spanning-set independence under the tensor representations."""
    if not (1 <= d <= 3):
        raise click.ClickException("--d must be in 1..3 (desk scale)")
    if not (0 <= max_degree <= 2):
        raise click.ClickException("--max-degree must be in 0..2 (desk scale)")
    if not (1 <= n <= 6):
        raise click.ClickException("--n must be in 1..6 (desk scale)")
    count, rank = affine.pbw_rank_check(d, max_degree, n)
    ok = count == rank
    if as_json:
        click.echo(json.dumps({"d": d, "max_degree": max_degree, "n": n,
                               "count": count, "rank": rank, "pass": ok},
                              separators=(",", ":")))
    else:
        word = "PASS" if ok else "FAIL"
        if _color_ok():
            word = click.style(word, fg="green" if ok else "red")
        click.echo(f"count={count} rank={rank} {word}")
    sys.exit(0 if ok else 1)


if __name__ == "__main__":
    main()
