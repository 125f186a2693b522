from .words import PageRepository, WordRepository

__all__ = ["PageRepository", "WordRepository"]
