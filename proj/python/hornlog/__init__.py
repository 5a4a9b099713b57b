"""Embeddable Horn-clause engine: knowledge bases, queries, and software metrics."""

from ._hornlog import *  # noqa: F401,F403
