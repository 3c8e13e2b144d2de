"""
HEP Partitioner - hybrid edge partitioning for power-law graphs

Splits the edge set of a graph by a degree threshold tau. Edges incident to at
least one low-degree vertex are partitioned in memory with NE++ (neighborhood
expansion over a pruned CSR); edges between two high-degree vertices are
spilled to disk and partitioned by an informed HDRF streaming pass.

Main modules:
- graph: binary edge-list ingestion, degree statistics, pruned CSR, tau planning
- nepp: NE++ in-memory expansion engine
- streaming: HDRF streaming plus random and degree-hash baselines
- metrics: replication factor, balance, validation and diagnostics
- oracle: reference NE, brute-force optimum and synthetic graph generators
- assignment: assignment records, sinks and the binary assignment file
- pipeline: end-to-end partitioning runs
- cli: hepctl command-line tool
"""

__version__ = "0.1.0"
__author__ = "HEP Partitioner Team"

__all__ = ["__version__", "__author__"]
