#!/usr/bin/env python3
"""Fetch the benchmark graphs used in the strategy comparison.

The comparison runs on seven graphs; `add32` is the one the acceptance
tests look for (data/add32.graph).  Two sources are tried:

* the graph partitioning archive (chriswalshaw.co.uk), which serves
  adjacency-list files this package reads as-is;
* the SuiteSparse matrix collection (sparse.tamu.edu), served as
  MatrixMarket tarballs and converted here: pattern symmetrized, diagonal
  dropped, unit edge weights.

Usage:
    python3 scripts/fetch_graphs.py              # add32 into data/
    python3 scripts/fetch_graphs.py --all        # every graph we can locate
    python3 scripts/fetch_graphs.py --matrix Gupta/gupta2
    python3 scripts/fetch_graphs.py --list

If a download fails (moved file, offline environment), search the graph's
name at https://sparse.tamu.edu, download the MatrixMarket tarball by hand,
and run with --mtx path/to/file.mtx --name <graph>.
"""

import argparse
import io
import sys
import tarfile
import tempfile
import urllib.error
import urllib.request
from pathlib import Path

REPO = Path(__file__).resolve().parents[1]
DEFAULT_OUTDIR = REPO / "data"

WALSHAW_URLS = [
    "https://chriswalshaw.co.uk/partition/archive/{name}.graph",
    "http://chriswalshaw.co.uk/partition/archive/{name}.graph",
]
SUITESPARSE_URLS = [
    "https://sparse.tamu.edu/MM/{group}/{name}.tar.gz",
    "https://suitesparse-collection-website.herokuapp.com/MM/{group}/{name}.tar.gz",
]

# graph name -> SuiteSparse group (None: group unknown, search by name)
GRAPHS = {
    "add32": "Hamm",
    "finance256": None,
    "gupta2": "Gupta",
    "memplus": "Hamm",
    "pcrystk02": "Boeing",
    "rajat10": "Rajat",
    "ramage02": None,
}


def _download(url: str, timeout: float = 60.0) -> bytes:
    print(f"  trying {url}")
    with urllib.request.urlopen(url, timeout=timeout) as resp:
        return resp.read()


def _mtx_to_graph_text(mtx_bytes: bytes) -> str:
    import numpy as np
    import scipy.io
    import scipy.sparse

    from wlpart import DoublyWeightedGraph, emit_metis

    mat = scipy.io.mmread(io.BytesIO(mtx_bytes)).tocsr()
    mat = abs(mat)
    mat = mat.maximum(mat.T)
    mat.setdiag(0)
    mat.eliminate_zeros()
    coo = mat.tocoo()
    keep = coo.row <= coo.col
    edges = [(int(i), int(j), 1.0)
             for i, j in zip(coo.row[keep], coo.col[keep])]
    g = DoublyWeightedGraph.from_edges(mat.shape[0], edges)
    return emit_metis(g)


def _extract_mtx(tar_bytes: bytes, name: str) -> bytes:
    with tempfile.TemporaryDirectory() as tmp:
        with tarfile.open(fileobj=io.BytesIO(tar_bytes), mode="r:gz") as tar:
            member = next(m for m in tar.getmembers()
                          if m.name.endswith(f"{name}.mtx"))
            tar.extract(member, tmp)
            return (Path(tmp) / member.name).read_bytes()


def fetch(name: str, group: str | None, outdir: Path) -> bool:
    out = outdir / f"{name}.graph"
    if out.exists():
        print(f"{name}: already present at {out}")
        return True
    print(f"{name}:")
    for url in WALSHAW_URLS:
        try:
            data = _download(url.format(name=name))
        except (urllib.error.URLError, OSError) as exc:
            print(f"    unavailable ({exc})")
            continue
        out.write_bytes(data)
        print(f"  wrote {out}")
        return True
    if group is not None:
        for url in SUITESPARSE_URLS:
            try:
                tar_bytes = _download(url.format(group=group, name=name))
                mtx = _extract_mtx(tar_bytes, name)
            except (urllib.error.URLError, OSError, StopIteration) as exc:
                print(f"    unavailable ({exc})")
                continue
            out.write_text(_mtx_to_graph_text(mtx))
            print(f"  converted MatrixMarket -> {out}")
            return True
    else:
        print(f"    no known SuiteSparse group; search "
              f"https://sparse.tamu.edu for {name!r} and rerun with "
              f"--mtx <file> --name {name}")
    print(f"  FAILED: could not fetch {name}")
    return False


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--all", action="store_true",
                        help="fetch every benchmark graph, not just add32")
    parser.add_argument("--matrix", metavar="GROUP/NAME",
                        help="fetch one SuiteSparse matrix by group/name")
    parser.add_argument("--mtx", type=Path,
                        help="convert a local MatrixMarket file instead of "
                             "downloading")
    parser.add_argument("--name", help="output name for --mtx")
    parser.add_argument("--outdir", type=Path, default=DEFAULT_OUTDIR)
    parser.add_argument("--list", action="store_true",
                        help="show the benchmark graph names and exit")
    args = parser.parse_args(argv)
    if args.list:
        for name, group in GRAPHS.items():
            source = f"SuiteSparse {group}/{name}" if group else \
                "search sparse.tamu.edu"
            print(f"{name:12s} {source}")
        return 0
    args.outdir.mkdir(parents=True, exist_ok=True)
    if args.mtx:
        if not args.name:
            parser.error("--mtx needs --name")
        out = args.outdir / f"{args.name}.graph"
        out.write_text(_mtx_to_graph_text(args.mtx.read_bytes()))
        print(f"converted {args.mtx} -> {out}")
        return 0
    if args.matrix:
        group, _, name = args.matrix.partition("/")
        if not name:
            parser.error("--matrix expects GROUP/NAME")
        return 0 if fetch(name, group, args.outdir) else 1
    targets = GRAPHS if args.all else {"add32": GRAPHS["add32"]}
    failures = [n for n, grp in targets.items()
                if not fetch(n, grp, args.outdir)]
    if failures:
        print(f"\nnot fetched: {', '.join(failures)}")
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
