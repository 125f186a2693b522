"""Handlers of the ``wordspot`` subcommands; each returns an exit code."""

import argparse
import logging
import os
import sys
from pathlib import Path
from typing import Optional

import ujson
import uvicorn

from project.cli.rendering import Labels, dumps, matches_to_json, matches_to_tsv
from project.db.storage import WordIndex, build_index
from project.exceptions import InputError, WordSpotError
from project.services.imaging.pnm import load_pnm, save_pnm
from project.services.imaging.synthetic import (
    GroundTruth,
    SyntheticPageSpec,
    render_synthetic_page,
)
from project.services.matching.length import scale_tolerance
from project.services.pipeline import ShapeOptions, analyze_page
from project.services.ranking import ScoringOptions, match_word
from project.services.segmentation.words import WordBlock, WordId
from project.settings import settings

logger = logging.getLogger(__name__)

SUCCESS = 0


def _read_bytes(path: Path) -> bytes:
    try:
        return path.read_bytes()
    except FileNotFoundError as exc:
        raise InputError(f"{path}: no such file") from exc
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from exc


def _read_json(path: Path) -> object:
    try:
        return ujson.loads(_read_bytes(path))
    except ValueError as exc:
        raise InputError(f"{path}: not valid JSON ({exc})") from exc


def _write_bytes(path: Path, data: bytes) -> None:
    try:
        path.write_bytes(data)
    except OSError as exc:
        raise WordSpotError(f"cannot write {path}: {exc.strerror}") from exc


def _shapes(args: argparse.Namespace) -> ShapeOptions:
    return ShapeOptions(
        sector_width=args.sector_width,
        noise_floor=args.noise_floor,
        priority=args.priority,
    )


def cmd_segment(args: argparse.Namespace) -> int:
    """Print lines, reference rows and words of every page as JSON."""
    pages = []
    for number, path in enumerate(args.pages):
        analysis = analyze_page(
            load_pnm(_read_bytes(path)),
            page=number,
            shapes=_shapes(args),
            min_speck=args.min_speck,
        )
        pages.append({"path": str(path), **analysis.as_dict(args.dump_profile)})
    sys.stdout.write(dumps({"pages": pages}))
    return SUCCESS


def cmd_index(args: argparse.Namespace) -> int:
    for path in args.pages:
        if not path.is_file():
            raise InputError(f"{path}: no such file")
    index = build_index(
        args.pages, shapes=_shapes(args), min_speck=args.min_speck, jobs=args.jobs,
    )
    index.save(args.output)
    return SUCCESS


def _load_labels(paths: list[Path]) -> Labels:
    labels = {}
    for page, path in enumerate(paths):
        truth = GroundTruth.model_validate(_read_json(path))
        for line_number, line in enumerate(truth.lines):
            for position, word in enumerate(line.words):
                labels[WordId(page, line_number, position)] = word.text
    return labels


def _image_query(path: Path, shapes: ShapeOptions, min_speck: int) -> WordBlock:
    image = load_pnm(_read_bytes(path))
    words = analyze_page(image, shapes=shapes, min_speck=min_speck).all_words
    if not words:
        raise InputError(f"{path}: no word found in the image")
    return max(words, key=lambda word: word.width)


def cmd_match(args: argparse.Namespace) -> int:
    """Rank the indexed words against a query and print the table."""
    index = WordIndex.from_json(
        _read_bytes(args.index).decode("utf-8", errors="replace"), source=args.index,
    )
    if args.image is not None:
        query = _image_query(args.image, _shapes(args), args.min_speck)
    else:
        try:
            word_id = WordId.parse(args.word)
        except ValueError as exc:
            raise InputError(str(exc)) from exc
        query = index.get_block(word_id)

    tolerance: Optional[int] = args.tolerance
    if tolerance is None:
        tolerance = scale_tolerance(args.dpi, base=settings.tolerance)
    result = match_word(
        query,
        index,
        top_k=args.top,
        ordering=args.ordering,
        tolerance=tolerance,
        options=ScoringOptions(
            sector_width=args.sector_width,
            noise_floor=args.noise_floor,
            priority=args.priority,
            ulam_max_height=settings.ulam_max_height,
            ulam_max_width=settings.ulam_max_width,
        ),
        jobs=args.jobs,
    )
    labels = _load_labels(args.labels) if args.labels else None
    render = matches_to_json if args.json else matches_to_tsv
    sys.stdout.write(render(result, labels))
    return SUCCESS


def cmd_synth(args: argparse.Namespace) -> int:
    """Write ``<stem>.pbm`` and ``<stem>.truth.json`` for a page spec."""
    spec = SyntheticPageSpec.model_validate(_read_json(args.spec))
    if args.seed is not None:
        spec = spec.model_copy(update={"seed": args.seed})
    page = render_synthetic_page(spec)
    try:
        args.output.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise WordSpotError(f"cannot create {args.output}: {exc.strerror}") from exc
    stem = args.spec.stem
    _write_bytes(args.output / f"{stem}.pbm", save_pnm(page.image))
    _write_bytes(
        args.output / f"{stem}.truth.json",
        dumps(page.truth.model_dump(mode="json")).encode("utf-8"),
    )
    logger.info(
        "rendered %d lines, %d words into %s",
        len(page.truth.lines),
        page.truth.word_count(),
        args.output,
    )
    return SUCCESS


def cmd_serve(args: argparse.Namespace) -> int:
    if args.index is not None:
        settings.index_path = args.index
        # uvicorn workers build their own settings from the environment
        os.environ["WORDSPOT_INDEX_PATH"] = str(args.index)
    uvicorn.run(
        "project.web.application:get_app",
        workers=settings.workers_count,
        host=args.host,
        port=args.port,
        reload=settings.reload,
        log_level=args.log_level.value.lower(),
        factory=True,
    )
    return SUCCESS


COMMANDS = {
    "segment": cmd_segment,
    "index": cmd_index,
    "match": cmd_match,
    "synth": cmd_synth,
    "serve": cmd_serve,
}
