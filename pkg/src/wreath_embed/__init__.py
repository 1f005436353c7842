"""Lifted cut embeddings of wreath products and their compression checks."""

from .group_core import Group, WreathElement, ball, word_length_bfs

__all__ = ["Group", "WreathElement", "ball", "word_length_bfs"]
