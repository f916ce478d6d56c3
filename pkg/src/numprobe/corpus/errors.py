class CorpusError(Exception):
    pass


class ParseError(CorpusError):
    def __init__(self, path, line: int | None, message: str):
        self.path, self.line = str(path), line
        where = f"{self.path}:{line}" if line is not None else self.path
        super().__init__(f"{where}: {message}")


class DanglingTableRef(CorpusError):
    pass


class DuplicateId(CorpusError):
    pass


class TableShapeError(CorpusError, ValueError):
    pass


class InvalidArithMetadata(CorpusError, ValueError):
    pass


class UnsupportedQuestionForm(CorpusError, ValueError):
    pass


class NoNumericCells(CorpusError, ValueError):
    pass
