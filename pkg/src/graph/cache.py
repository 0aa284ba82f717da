"""Binary on-disk cache for neighbor graphs.

Layout (little-endian):
    b"GMTG" | u32 version | u32 n | f64 radius | 32-byte SHA-256 key
    then per sample: u32 count, count x (u32 target, f64 cost)
"""

import hashlib
import json
import os
import tempfile
from pathlib import Path
from typing import Any, Dict, Optional

import numpy as np

from src.graph.neighbors import NeighborGraph
from src.sampling.sampler import SampleSet
from src.steering.models import SteeringModel, connect
from src.utils.logging_utils import get_logger

logger = get_logger("graph.cache")

MAGIC = b"GMTG"
VERSION = 1
RECORD = np.dtype([("target", "<u4"), ("cost", "<f8")])


def graph_cache_key(problem: Dict[str, Any], n: int, r: float, model: SteeringModel) -> bytes:
    """SHA-256 over the problem document, sample count, radius and steering model."""
    payload = {
        "problem": problem,
        "n": n,
        "radius": repr(float(r)),
        "model": {
            "kind": model.kind,
            "rho": model.rho,
            "discretization_step": model.discretization_step,
            "planar_cost": model.planar_cost,
        },
    }
    return hashlib.sha256(json.dumps(payload, sort_keys=True).encode("utf-8")).digest()


def cache_file_name(key: bytes) -> str:
    return f"graph_{key.hex()[:16]}.bin"


def save_graph(graph: NeighborGraph, path: Path, key: bytes) -> None:
    """Write the graph atomically: temporary file in the same directory, then rename.

    Args:
        graph: Graph to store
        path: Destination file
        key: 32-byte cache key
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(dir=path.parent, prefix=".graph_", suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as f:
            f.write(MAGIC)
            f.write(np.array([VERSION, graph.n], dtype="<u4").tobytes())
            f.write(np.array([graph.radius], dtype="<f8").tobytes())
            f.write(key)
            for out in graph.out_neighbors:
                f.write(np.array([len(out)], dtype="<u4").tobytes())
                f.write(np.array(list(out), dtype=RECORD).tobytes())
        os.replace(tmp_name, path)
    except BaseException:
        if os.path.exists(tmp_name):
            os.unlink(tmp_name)
        raise
    logger.info(f"Saved neighbor graph ({graph.edge_count} edges) to {path}")


def load_graph(
    path: Path, key: bytes, samples: SampleSet, model: SteeringModel
) -> Optional[NeighborGraph]:
    """Read a cached graph; returns None when the file is missing, stale or for another key.

    Discretized Dubins edge paths are regenerated from the steering model.
    """
    path = Path(path)
    if not path.exists():
        return None
    data = path.read_bytes()
    if data[:4] != MAGIC:
        logger.warning(f"Ignoring graph cache with bad magic: {path}")
        return None
    version, n = np.frombuffer(data, dtype="<u4", count=2, offset=4)
    radius = float(np.frombuffer(data, dtype="<f8", count=1, offset=12)[0])
    stored_key = data[20:52]
    if version != VERSION or stored_key != key or n != len(samples):
        logger.info(f"Graph cache {path} does not match this problem; rebuilding")
        return None

    offset = 52
    out_neighbors = []
    in_lists = [[] for _ in range(n)]
    for i in range(n):
        count = int(np.frombuffer(data, dtype="<u4", count=1, offset=offset)[0])
        offset += 4
        records = np.frombuffer(data, dtype=RECORD, count=count, offset=offset)
        offset += count * RECORD.itemsize
        out = tuple((int(t), float(c)) for t, c in zip(records["target"], records["cost"]))
        out_neighbors.append(out)
        for j, c in out:
            in_lists[j].append((i, c))

    edge_paths = {}
    if model.is_dubins:
        for i, out in enumerate(out_neighbors):
            for j, _ in out:
                edge_paths[(i, j)] = connect(model, samples[i], samples[j]).path

    logger.info(f"Loaded neighbor graph from {path}")
    return NeighborGraph(
        n=int(n),
        radius=radius,
        out_neighbors=tuple(out_neighbors),
        in_neighbors=tuple(tuple(lst) for lst in in_lists),
        edge_paths=edge_paths,
        exact=not model.is_dubins,
    )
