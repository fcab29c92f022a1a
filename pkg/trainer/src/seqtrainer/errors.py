"""Error taxonomy mirrored onto the same exit codes the data toolkit
uses: 1 usage, 2 data, 3 internal."""


class TrainerError(Exception):
    pass


class UsageError(TrainerError):
    pass


class DataError(TrainerError):
    pass


class InternalError(TrainerError):
    pass
