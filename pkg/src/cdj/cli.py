"""Command-line interface: ``cdj chartable|genvecs|decompose|quotients|search``.

Exit codes: 0 success, 1 partial failure (search), 2 invalid invocation or input.
"""
from __future__ import annotations

import logging
import sys
from pathlib import Path

import click

from .chars import CharTableError, format_chartable
from .covers import InadmissibleSignature, Signature, VectorError, cover_action, genus_from_rh
from .decomp import SchurPolicyViolation, decompose, decompose_quotient
from .io import GroupFileError, format_vector, read_vector
from .perm import MalformedPermutation
from .permgrp import ContainmentError, GroupTooLarge, SubgroupBoundError
from .search import GroupContext, SearchJob, emit_table, group_paths_in, run_search
from .store import ResultStore, record_to_dict

EXIT_PARTIAL = 1
EXIT_INVALID = 2

_INPUT_ERRORS = (
    GroupFileError, MalformedPermutation, InadmissibleSignature, VectorError, CharTableError,
    ContainmentError, GroupTooLarge, SubgroupBoundError, SchurPolicyViolation, OSError,
)


def _fail(exc: Exception) -> None:
    click.echo(f"error: {exc}", err=True)
    sys.exit(EXIT_INVALID)


def _signature(text: str) -> Signature:
    try:
        return Signature.parse(text)
    except InadmissibleSignature as exc:
        raise click.BadParameter(str(exc)) from None


def _context(group, table, schur, aut, cache) -> GroupContext:
    return GroupContext(group, cache_dir=cache, table_path=table, schur_path=schur, aut_path=aut)


group_opt = click.option("-g", "--group", "group", required=True,
                         type=click.Path(exists=True, dir_okay=False), help="Group file.")
sig_opt = click.option("-s", "--signature", "sig", required=True, help='Signature, e.g. "0; 2,4,6".')
table_opt = click.option("--table", type=click.Path(exists=True, dir_okay=False),
                         help="Character table file to use instead of computing one.")
schur_opt = click.option("--schur", type=click.Path(exists=True, dir_okay=False),
                         help="Schur index overrides: lines '<row> <index>'.")
aut_opt = click.option("--aut", type=click.Path(exists=True, dir_okay=False),
                       help="Automorphisms as generator images, one per line.")
cache_opt = click.option("--cache", type=click.Path(file_okay=False),
                         help="Character table cache directory (default: $CDJ_CACHE_DIR).")
fmt_opt = click.option("--format", "fmt", type=click.Choice(["text", "csv", "json"]),
                       default="text", show_default=True)


@click.group()
@click.option("-v", "--verbose", is_flag=True, help="Log progress to stderr.")
def main(verbose: bool) -> None:
    """Decompose Jacobians of curves with finite group actions."""
    logging.basicConfig(level=logging.INFO if verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")


@main.command()
@group_opt
@cache_opt
@table_opt
def chartable(group, cache, table):
    """Print the character table of a group in table-file format."""
    try:
        ctx = _context(group, table, None, None, cache)
        click.echo(format_chartable(ctx.table, ctx.group.label or "?"), nl=False)
    except _INPUT_ERRORS as exc:
        _fail(exc)


@main.command()
@group_opt
@sig_opt
@click.option("--dedup", is_flag=True, help="One vector per Hurwitz/conjugacy class.")
@aut_opt
def genvecs(group, sig, dedup, aut):
    """List generating vectors for a genus-0 signature."""
    signature = _signature(sig)
    try:
        ctx = _context(group, None, None, aut, None)
        count = 0
        for vec in ctx.vectors(signature, dedup=dedup):
            count += 1
            click.echo(f"# vector {count}")
            click.echo(format_vector(vec), nl=False)
        click.echo(f"# {count} vectors")
    except _INPUT_ERRORS as exc:
        _fail(exc)


def _records(ctx: GroupContext, signature: Signature, vector: str | None):
    genus_from_rh(ctx.group, signature)  # rejects periods G cannot realize
    if vector:
        vec = read_vector(vector, ctx.group)
        cover = cover_action(ctx.group, signature, vec, ctx.classes)
        return [decompose(cover, ctx.rationals)]
    recs = list(ctx.decompositions(signature, dedup=True))
    if not recs:
        click.echo(f"note: no generating vectors for {signature}", err=True)
    return recs


@main.command("decompose")
@group_opt
@sig_opt
@click.option("--vector", type=click.Path(exists=True, dir_okay=False),
              help="Generating vector file; default is every class of vectors.")
@table_opt
@schur_opt
@aut_opt
@cache_opt
@fmt_opt
def decompose_cmd(group, sig, vector, table, schur, aut, cache, fmt):
    """Group algebra decomposition of JX."""
    signature = _signature(sig)
    try:
        ctx = _context(group, table, schur, aut, cache)
        recs = _records(ctx, signature, vector)
        click.echo(emit_table([record_to_dict(r) for r in recs], fmt), nl=False)
    except _INPUT_ERRORS as exc:
        _fail(exc)


@main.command()
@group_opt
@sig_opt
@click.option("--max-subgroup-order", type=int, required=True,
              help="Largest subgroup order to quotient by.")
@click.option("--vector", type=click.Path(exists=True, dir_okay=False))
@table_opt
@schur_opt
@aut_opt
@cache_opt
@fmt_opt
def quotients(group, sig, max_subgroup_order, vector, table, schur, aut, cache, fmt):
    """Decompositions of JX_H for subgroup classes up to a given order."""
    signature = _signature(sig)
    try:
        ctx = _context(group, table, schur, aut, cache)
        subs = [h for h in ctx.subgroups(max_subgroup_order) if h.order > 1]
        out = []
        for rec in _records(ctx, signature, vector):
            out.append(record_to_dict(rec))
            out.extend(record_to_dict(decompose_quotient(rec, h)) for h in subs)
        click.echo(emit_table(out, fmt), nl=False)
    except _INPUT_ERRORS as exc:
        _fail(exc)


@main.command()
@click.option("--groups", "groups_dir", required=True,
              type=click.Path(exists=True, file_okay=False), help="Directory of *.pg files.")
@click.option("--genus-min", type=int, required=True)
@click.option("--genus-max", type=int, required=True)
@click.option("-s", "--signature", "sigs", multiple=True,
              help="Restrict to these signatures (repeatable); default: all admissible.")
@click.option("--max-subgroup-order", type=int, default=0, show_default=True,
              help="Also scan quotients by subgroups up to this order.")
@click.option("--only-complete", is_flag=True, help="Keep completely decomposable records only.")
@click.option("--all-vectors", is_flag=True, help="Do not deduplicate generating vectors.")
@click.option("--jobs", type=click.IntRange(min=1), default=1, show_default=True)
@click.option("--out", required=True, type=click.Path(dir_okay=False),
              help="Rendered table; the JSON Lines log goes to OUT.jsonl.")
@cache_opt
@fmt_opt
def search(groups_dir, genus_min, genus_max, sigs, max_subgroup_order, only_complete,
           all_vectors, jobs, out, cache, fmt):
    """Scan group files for (completely) decomposable Jacobians."""
    if genus_min > genus_max:
        raise click.BadParameter("--genus-min exceeds --genus-max")
    signatures = tuple(_signature(s) for s in sigs) or None
    job = SearchJob(
        group_paths=group_paths_in(groups_dir),
        genus_min=genus_min,
        genus_max=genus_max,
        signatures=signatures,
        max_subgroup_order=max_subgroup_order,
        dedup=not all_vectors,
        only_complete=only_complete,
        jobs=jobs,
        cache_dir=cache,
    )
    out_path = Path(out)
    log_path = out_path.with_name(out_path.name + ".jsonl")
    log_path.unlink(missing_ok=True)
    result = run_search(job, ResultStore(log_path))
    out_path.write_text(emit_table(result.records, fmt))
    for msg in result.failures:
        click.echo(f"failed: {msg}", err=True)
    click.echo(f"{len(result.records)} records, {len(result.failures)} failures", err=True)
    if result.failures:
        sys.exit(EXIT_PARTIAL)


if __name__ == "__main__":  # pragma: no cover
    main()
