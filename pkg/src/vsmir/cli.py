"""Command-line front end: index, search, eval, show, serve.

Exit codes: 0 success, 1 operational failure (including partial indexing
failures), 2 usage errors (argparse's convention).  Every command takes
--json for schema-stable machine output; human tables right-align numeric
columns and print scores to 3 decimals.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .errors import VsmError
from .evaluation import BatchEvalReport, batch_eval, parse_qrels, parse_queries
from .search import QueryRun, SearchRequest
from .similarity import CosineMode, Measure
from .store import Repository
from .textpipe import StopList, TextPipeline

MEASURE_NAMES = [measure.value for measure in Measure]
COSINE_MODE_NAMES = [mode.value for mode in CosineMode]


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vsm",
        description="Vector-space-model text retrieval over a file-backed repository.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    cmd = commands.add_parser("index", help="ingest every *.txt file in a directory")
    cmd.add_argument("directory", help="directory of UTF-8 *.txt files (document name = file stem)")
    cmd.add_argument("--repo", required=True, help="repository directory (created if absent)")
    cmd.add_argument("--class", dest="classification", default="unclassified",
                     help="classification label for the ingested documents")
    cmd.add_argument("--stoplist", help="stop-list file; honored only when creating the repository")
    cmd.add_argument("--json", action="store_true", help="machine-readable report")
    cmd.set_defaults(func=cmd_index)

    cmd = commands.add_parser("search", help="run one query and print the ranked table")
    cmd.add_argument("query", help="query text")
    cmd.add_argument("--repo", required=True)
    cmd.add_argument("--measure", required=True, choices=MEASURE_NAMES)
    cmd.add_argument("--threshold", type=float, default=0.0, help="keep scores strictly above this (default 0)")
    cmd.add_argument("--class", dest="classifications", action="append", default=[],
                     metavar="LABEL", help="restrict to a classification (repeatable)")
    cmd.add_argument("--cosine-mode", choices=COSINE_MODE_NAMES, default="consistent")
    cmd.add_argument("--limit", type=int, help="truncate the ranked list")
    cmd.add_argument("--json", action="store_true")
    cmd.set_defaults(func=cmd_search)

    cmd = commands.add_parser("eval", help="batch-evaluate queries against qrels")
    cmd.add_argument("--repo", required=True)
    cmd.add_argument("--queries", required=True, help="file of 'query_id<TAB>query text' lines")
    cmd.add_argument("--qrels", required=True, help="file of 'query_id<TAB>doc_name<TAB>0|1' lines")
    cmd.add_argument("--measure", required=True, choices=MEASURE_NAMES)
    cmd.add_argument("--cosine-mode", choices=COSINE_MODE_NAMES, default="consistent")
    cmd.add_argument("--json", action="store_true")
    cmd.set_defaults(func=cmd_eval)

    cmd = commands.add_parser("show", help="dump corpus, term, or document statistics")
    cmd.add_argument("--repo", required=True)
    cmd.add_argument("--term", help="show df/idf/postings for one term")
    cmd.add_argument("--doc", help="show the weight table for one document (id or name)")
    cmd.add_argument("--json", action="store_true")
    cmd.set_defaults(func=cmd_show)

    cmd = commands.add_parser("serve", help="run the HTTP service over a repository")
    cmd.add_argument("--repo", required=True)
    cmd.add_argument("--host", default=os.environ.get("VSM_HOST", "127.0.0.1"))
    cmd.add_argument("--port", type=int, default=int(os.environ.get("VSM_PORT", "8000")))
    cmd.add_argument("--cosine-mode", choices=COSINE_MODE_NAMES,
                     default=os.environ.get("VSM_COSINE_MODE", "consistent"))
    cmd.add_argument("--strict-classifications", action="store_true",
                     default=os.environ.get("VSM_STRICT_CLASSIFICATIONS", "") == "1",
                     help="reject uploads whose classification is not already registered")
    cmd.add_argument("--static-dir", default=os.environ.get("VSM_STATIC_DIR"),
                     help="directory of built web UI assets to serve at /")
    cmd.set_defaults(func=cmd_serve)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (VsmError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entrypoint() -> None:
    raise SystemExit(main())


# -- commands ---------------------------------------------------------------


def cmd_index(args) -> int:
    directory = Path(args.directory)
    if not directory.is_dir():
        print(f"error: {directory} is not a directory", file=sys.stderr)
        return 1
    pipeline = None
    if args.stoplist:
        pipeline = TextPipeline(stoplist=StopList.from_file(args.stoplist))
    with Repository.open(args.repo, pipeline=pipeline) as repo:
        if args.stoplist and not repo.created:
            print("warning: --stoplist ignored; repository already exists with its own pipeline",
                  file=sys.stderr)
        files = sorted(directory.glob("*.txt"))
        if not files:
            print(f"warning: no *.txt files in {directory}", file=sys.stderr)
        indexed, failed = [], []
        for path in files:
            try:
                text = path.read_text("utf-8")
            except (OSError, UnicodeDecodeError) as exc:
                failed.append({"file": path.name, "error": str(exc)})
                continue
            doc = repo.add_document(path.stem, args.classification, text)
            indexed.append({"file": path.name, "doc_id": doc.doc_id, "term_count": len(doc.terms)})
        n_docs = repo.stats().n_docs
    if args.json:
        print(_dumps({"indexed": indexed, "failed": failed, "n_docs": n_docs}))
    else:
        for entry in indexed:
            print(f"indexed {entry['file']}: doc_id {entry['doc_id']}, {entry['term_count']} terms")
        for entry in failed:
            print(f"failed {entry['file']}: {entry['error']}", file=sys.stderr)
        print(f"{len(indexed)} indexed, {len(failed)} failed; corpus now holds {n_docs} documents")
    return 1 if failed else 0


def cmd_search(args) -> int:
    request = SearchRequest(
        query_text=args.query,
        measure=Measure.parse(args.measure),
        classifications=frozenset(args.classifications),
        threshold=args.threshold,
        limit=args.limit,
    )
    with Repository.open(args.repo, create=False) as repo:
        run = repo.search(request, cosine_mode=CosineMode.parse(args.cosine_mode))
    if args.json:
        print(_dumps(run.as_dict()))
    else:
        _print_run_table(run)
    return 0


def cmd_eval(args) -> int:
    queries = parse_queries(args.queries)
    qrels = parse_qrels(args.qrels)
    measure = Measure.parse(args.measure)
    cosine_mode = CosineMode.parse(args.cosine_mode)
    runs: dict[str, QueryRun] = {}
    with Repository.open(args.repo, create=False) as repo:
        for query_id, text in queries:
            runs[query_id] = repo.search(SearchRequest(text, measure), cosine_mode=cosine_mode)
        report = batch_eval(qrels, runs, known_names=repo.document_names())
    for query_id, reason in report.skipped:
        print(f"warning: query {query_id} skipped: {reason}", file=sys.stderr)
    if args.json:
        payload = {
            "measure": measure.value,
            "per_query": {
                query_id: {**metrics.as_dict(),
                           "ranked_doc_ids": [r.doc_id for r in runs[query_id].results]}
                for query_id, metrics in report.per_query.items()
            },
            "mean_precision": report.mean_precision,
            "mean_recall": report.mean_recall,
            "skipped": [list(pair) for pair in report.skipped],
        }
        print(_dumps(payload))
    else:
        _print_eval_table(report)
    return 0 if report.per_query else 1


def cmd_show(args) -> int:
    with Repository.open(args.repo, create=False) as repo:
        index = repo.index
        if args.term is not None:
            plist = index.postings_list(args.term)
            idf = index.idf(args.term) if index.n_docs else 0.0
            if args.json:
                print(_dumps({
                    "term": args.term,
                    "df": plist.df,
                    "idf": idf,
                    "postings": [{"doc_id": p.doc_id, "name": index.document(p.doc_id).name,
                                  "tf": p.tf} for p in plist.postings],
                }))
            else:
                print(f"term: {args.term}")
                print(f"df: {plist.df}")
                print(f"idf: {idf:.3f}")
                rows = [(str(p.doc_id), index.document(p.doc_id).name, str(p.tf))
                        for p in plist.postings]
                _print_table(("doc_id", "name", "tf"), rows, right={0, 2})
        elif args.doc is not None:
            doc = _resolve_doc(repo, args.doc)
            weights = {term: index.weight(term, doc.doc_id) for term in sorted(doc.terms)}
            if args.json:
                print(_dumps({
                    "doc_id": doc.doc_id,
                    "name": doc.name,
                    "classification": doc.classification,
                    "terms": [{"term": t, "tf": doc.terms[t], "weight": w}
                              for t, w in weights.items()],
                }))
            else:
                print(f"doc_id: {doc.doc_id}")
                print(f"name: {doc.name}")
                print(f"classification: {doc.classification}")
                rows = [(t, str(doc.terms[t]), f"{w:.3f}") for t, w in weights.items()]
                _print_table(("term", "tf", "weight"), rows, right={1, 2})
        else:
            stats = repo.stats()
            labels = sorted(repo.classifications())
            if args.json:
                print(_dumps({"n_docs": stats.n_docs, "n_terms": stats.n_terms,
                              "classifications": labels}))
            else:
                print(f"documents: {stats.n_docs}")
                print(f"terms: {stats.n_terms}")
                print(f"classifications: {', '.join(labels) if labels else '(none)'}")
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import ServiceConfig, create_app

    config = ServiceConfig(
        default_cosine_mode=CosineMode.parse(args.cosine_mode),
        strict_classifications=args.strict_classifications,
        static_dir=args.static_dir,
    )
    with Repository.open(args.repo) as repo:
        app = create_app(repo, config)
        uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


# -- helpers ----------------------------------------------------------------


def _resolve_doc(repo: Repository, ref: str):
    """--doc takes an id or a name; ids win, names resolve to the lowest id."""
    docs = repo.documents()
    if ref.isdigit():
        return repo.document(int(ref))
    for doc in docs:
        if doc.name == ref:
            return doc
    from .errors import UnknownDocumentError

    raise UnknownDocumentError(f"no document with id or name {ref!r}")


def _print_run_table(run: QueryRun) -> None:
    rows = [
        (str(r.rank), r.name, r.classification, f"{r.score:.3f}")
        for r in run.results
    ]
    _print_table(("Rank", "Document Name", "Classification", "Similarity"), rows, right={0, 3})
    plural = "" if len(run.results) == 1 else "s"
    print(f"{len(run.results)} document{plural} retrieved (run {run.run_id})")


def _print_eval_table(report: BatchEvalReport) -> None:
    rows = [
        (
            query_id,
            str(m.retrieved_count),
            str(m.relevant_retrieved_count),
            f"{m.precision:.3f}",
            f"{m.recall:.3f}" if m.recall is not None else "-",
        )
        for query_id, m in report.per_query.items()
    ]
    mean_recall = f"{report.mean_recall:.3f}" if report.mean_recall is not None else "-"
    rows.append(("mean", "", "", f"{report.mean_precision:.3f}", mean_recall))
    _print_table(("Query", "Retrieved", "Relevant", "Precision", "Recall"), rows,
                 right={1, 2, 3, 4})


def _print_table(headers: tuple[str, ...], rows: list[tuple[str, ...]], right: set[int]) -> None:
    """Two-space separated columns; `right` lists right-aligned column indexes."""
    widths = [len(h) for h in headers]
    for row in rows:
        widths = [max(w, len(cell)) for w, cell in zip(widths, row)]
    def fmt(cells: tuple[str, ...]) -> str:
        parts = [
            cell.rjust(widths[i]) if i in right else cell.ljust(widths[i])
            for i, cell in enumerate(cells)
        ]
        return "  ".join(parts).rstrip()
    print(fmt(headers))
    for row in rows:
        print(fmt(row))


def _dumps(payload: dict) -> str:
    return json.dumps(payload, ensure_ascii=False, sort_keys=True, indent=2)


if __name__ == "__main__":
    entrypoint()
