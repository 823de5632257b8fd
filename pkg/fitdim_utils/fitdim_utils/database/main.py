"""Main Database module

This module contains the results database. Every complex checked by the `verify` command can be
recorded together with the dimensions computed along the different paths, so that counterexamples
and timings can be looked at later.

"""
import datetime as dt
import hashlib
import os

import sqlalchemy as sql
from sqlalchemy import orm

from fitdim_utils.database import tables


class ResultsDataBase:
    """Database of verification runs

    The initialization should be done in a 'with' statement. This will invoke the __enter__ method
    that opens the session, and afterwards the session is committed and closed again.

    Example:

    .. code-block:: python

        with ResultsDataBase(db_path) as data_base:
            data_base.add_run(document, outcome, seed=7)

    :param db_path: Path to the .db database file. Created with its tables if it does not exist.
    :type db_path: str

    """
    def __init__(self, db_path):
        self._db = "sqlite:///" + db_path
        self._session = None
        if not os.path.exists(db_path):
            tables.create_tables(db_path).close()

    def __enter__(self):
        engine = sql.create_engine(self._db)
        tables.Base.metadata.create_all(engine)
        self._session = orm.sessionmaker(bind=engine)()
        return self

    def __exit__(self, exc_type, exc_value, traceback):
        if exc_type is None:
            self._session.commit()
        else:
            self._session.rollback()
        self._session.close()
        self._session = None

    def add_run(self, document, outcome, seed=None, name=None):
        """Record one verification

        Complexes are identified by the digest of their document and stored only once.

        :param document: Rendered complex document.
        :type document: str
        :param outcome: Result of :func:`fitdim_utils.cli.verify_complex`.
        :type outcome: ~fitdim_utils.cli.VerificationOutcome
        :param seed: Seed the complex was generated with.
        :type seed: int
        :param name: Name of the complex.
        :type name: str

        Returns:
            ~fitdim_utils.database.tables.VerificationRun:
                The new table row.

        """
        record = self._get_or_add_complex(document, outcome, name)
        run = tables.VerificationRun(
            time=dt.datetime.now(dt.timezone.utc).replace(tzinfo=None), seed=seed,
            dim_fitting=str(outcome.dim_fitting), dim_homology=str(outcome.dim_homology),
            dim_dual=str(outcome.dim_dual),
            dim_dual_of_dual_complex=str(outcome.dim_dual_of_dual_complex),
            acyclic=outcome.acyclic, agree=outcome.agree, elapsed_ms=outcome.elapsed_ms,
            complex=record)
        self._session.add(run)
        self._session.flush()
        return run

    def get_runs(self, agree=None):
        """All runs, optionally only those that (dis)agree, oldest first"""
        query = self._session.query(tables.VerificationRun)
        if agree is not None:
            query = query.filter(tables.VerificationRun.agree == agree)
        return query.order_by(tables.VerificationRun.id.asc()).all()

    def get_counterexamples(self):
        """Documents of all complexes with at least one disagreeing run"""
        query = self._session.query(tables.ComplexRecord).join(tables.VerificationRun).filter(
            tables.VerificationRun.agree.is_(False)).distinct()
        return [record.document for record in query.all()]

    def get_complex(self, digest):
        """ComplexRecord of the given digest, None if unknown"""
        return self._session.query(tables.ComplexRecord).filter(
            tables.ComplexRecord.digest == digest).one_or_none()

    def _get_or_add_complex(self, document, outcome, name):
        digest = document_digest(document)
        record = self.get_complex(digest)
        if record is not None:
            return record
        kind_name = "Fp" if outcome.characteristic else "QQ"
        field_kind = self._session.query(tables.FieldKind).filter(
            tables.FieldKind.name == kind_name).one()
        record = tables.ComplexRecord(name=name, digest=digest, document=document,
                                      nvars=outcome.nvars, characteristic=outcome.characteristic,
                                      low=outcome.low, high=outcome.high,
                                      field_kind_id=field_kind.id)
        self._session.add(record)
        return record


def document_digest(document):
    """sha256 hex digest of a complex document"""
    return hashlib.sha256(document.encode("utf-8")).hexdigest()
