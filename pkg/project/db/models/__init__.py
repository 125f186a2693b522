from .words import INDEX_FORMAT_VERSION, PageRecord, WordIndexDocument, WordRecord

__all__ = ["INDEX_FORMAT_VERSION", "PageRecord", "WordIndexDocument", "WordRecord"]
