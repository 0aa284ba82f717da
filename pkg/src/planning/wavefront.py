"""Partition of samples into unexplored / open / closed, with the tree they span."""

import math
from dataclasses import dataclass
from enum import IntEnum
from typing import List, Optional


class Label(IntEnum):
    UNEXPLORED = 0
    OPEN = 1
    CLOSED = 2


@dataclass
class Wavefront:
    """Per-sample label, cost-to-arrive, parent link and iteration of insertion.

    Every sample carries exactly one label. Cost is finite exactly for tree
    members (open or closed), and parent chains lead back to the root.
    """

    root: int
    label: List[Label]
    cost_to_arrive: List[float]
    parent: List[Optional[int]]
    iteration_added: List[Optional[int]]

    @classmethod
    def initial(cls, n: int, root: int) -> "Wavefront":
        wf = cls(
            root=root,
            label=[Label.UNEXPLORED] * n,
            cost_to_arrive=[math.inf] * n,
            parent=[None] * n,
            iteration_added=[None] * n,
        )
        wf.label[root] = Label.OPEN
        wf.cost_to_arrive[root] = 0.0
        wf.iteration_added[root] = 0
        return wf

    def __len__(self) -> int:
        return len(self.label)

    def add(self, x: int, parent: int, cost: float, iteration: int) -> None:
        self.label[x] = Label.OPEN
        self.cost_to_arrive[x] = cost
        self.parent[x] = parent
        self.iteration_added[x] = iteration

    def close(self, x: int) -> None:
        self.label[x] = Label.CLOSED

    def in_tree(self, x: int) -> bool:
        return self.label[x] != Label.UNEXPLORED

    def path_to(self, x: int) -> List[int]:
        """Sample indices from the root to ``x`` following parent links."""
        chain = [x]
        while self.parent[chain[-1]] is not None:
            chain.append(self.parent[chain[-1]])
            if len(chain) > len(self.label):
                raise RuntimeError(f"Parent links of sample {x} contain a cycle")
        chain.reverse()
        return chain

    def tree_nodes(self) -> List[int]:
        return [x for x, lab in enumerate(self.label) if lab != Label.UNEXPLORED]

    def count(self, label: Label) -> int:
        return sum(1 for lab in self.label if lab == label)

    def violations(self) -> List[str]:
        """Invariant violations, empty when the wavefront is consistent."""
        problems = []
        for x, lab in enumerate(self.label):
            if not isinstance(lab, Label):
                problems.append(f"sample {x} has no valid label: {lab!r}")
                continue
            finite = math.isfinite(self.cost_to_arrive[x])
            if finite != (lab != Label.UNEXPLORED):
                problems.append(
                    f"sample {x} labelled {lab.name} has cost {self.cost_to_arrive[x]}"
                )
        if self.parent[self.root] is not None or self.cost_to_arrive[self.root] != 0.0:
            problems.append(f"root {self.root} has a parent or nonzero cost")
        for x in self.tree_nodes():
            node = x
            steps = 0
            while self.parent[node] is not None:
                up = self.parent[node]
                if self.label[up] == Label.UNEXPLORED:
                    problems.append(f"sample {node} hangs from unexplored sample {up}")
                    break
                if not self.cost_to_arrive[up] < self.cost_to_arrive[node]:
                    problems.append(f"cost does not decrease from {node} to parent {up}")
                    break
                node = up
                steps += 1
                if steps > len(self.label):
                    problems.append(f"parent chain of {x} does not terminate")
                    break
            else:
                if node != self.root:
                    problems.append(f"parent chain of {x} ends at {node}, not the root")
        return problems
