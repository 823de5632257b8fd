"""SQLAlchemy tables

Verification runs are recorded in an SQLite database. The tables are defined here using an
ORM-approach with SQLAlchemy; the classes are simply tables that define the columns of the SQL
table. Extended dimensions are stored as strings: the integer, '-inf' or 'inf'.

"""
import datetime as dt
import os
from typing import Optional

from sqlalchemy import ForeignKey, Text, create_engine
from sqlalchemy.orm import DeclarativeBase, Mapped, backref, mapped_column, relationship, \
    sessionmaker

from fitdim_utils import utils


class Base(DeclarativeBase):
    """Declarative base of all tables"""


class FieldKind(Base):
    """SQL table for coefficient field kinds"""
    __tablename__ = "field_kind"
    id: Mapped[int] = mapped_column(primary_key=True)  #: SQL row ID.
    name: Mapped[str] = mapped_column()  #: 'QQ' or 'Fp'.


class ComplexRecord(Base):
    """SQL table for complex documents"""
    __tablename__ = "complex"
    id: Mapped[int] = mapped_column(primary_key=True)  #: SQL row ID.
    name: Mapped[Optional[str]] = mapped_column()  #: Name of the complex.
    digest: Mapped[str] = mapped_column(unique=True)  #: sha256 of the rendered document.
    document: Mapped[str] = mapped_column(Text)  #: Rendered complex document.
    nvars: Mapped[Optional[int]] = mapped_column()  #: Number of ring variables.
    #: Characteristic of the coefficient field.
    characteristic: Mapped[Optional[int]] = mapped_column()
    low: Mapped[Optional[int]] = mapped_column()  #: Lowest degree of the complex.
    high: Mapped[Optional[int]] = mapped_column()  #: Highest degree of the complex.
    #: ID of the field kind table row of the complex.
    field_kind_id: Mapped[int] = mapped_column(ForeignKey("field_kind.id"))
    #: Relationship to the FieldKind row of the complex.
    field_kind: Mapped[FieldKind] = relationship(backref=backref("complexes", uselist=True))


class VerificationRun(Base):
    """SQL table for the outcome of one verification of a complex"""
    __tablename__ = "verification_run"
    id: Mapped[int] = mapped_column(primary_key=True)  #: SQL row ID.
    time: Mapped[dt.datetime] = mapped_column()  #: Time (UTC) of the run.
    seed: Mapped[Optional[int]] = mapped_column()  #: Seed the complex was generated with, if any.
    dim_fitting: Mapped[Optional[str]] = mapped_column()  #: Dimension from the Fitting ideals.
    dim_homology: Mapped[Optional[str]] = mapped_column()  #: Dimension from the homology.
    #: Dimension of the dual from the expected ranks.
    dim_dual: Mapped[Optional[str]] = mapped_column()
    #: Dimension of the dual computed from the dual complex.
    dim_dual_of_dual_complex: Mapped[Optional[str]] = mapped_column()
    acyclic: Mapped[bool] = mapped_column()  #: Outcome of the rank and grade test.
    agree: Mapped[bool] = mapped_column()  #: Whether all cross-checks agree.
    elapsed_ms: Mapped[Optional[int]] = mapped_column()  #: Run time of the verification.
    #: ID of the complex table row of the run.
    complex_id: Mapped[int] = mapped_column(ForeignKey("complex.id"))
    #: Relationship to the ComplexRecord row of the run.
    complex: Mapped[ComplexRecord] = relationship(backref=backref("runs", uselist=True))


def create_session(db_path):
    """Create a sql session

    Connects to an SQLite database file; the file and all tables are created if they do not exist.

    :param db_path: Path to database file.
    :type db_path: str

    Returns:
        ~sqlalchemy.orm.session.Session:
            The current session.

    """
    folder = os.path.dirname(db_path)
    if folder and not os.path.exists(folder):
        utils.make_folder(folder)
    engine = create_engine("sqlite:///" + db_path)
    Base.metadata.create_all(engine)
    session = sessionmaker(bind=engine)()
    return session


def create_tables(db_path, session=None):
    """Create the basic database structure

    This should only be called when the database doesn't exist yet. The method adds the field
    kinds to the database.

    :param db_path: Path to database file.
    :type db_path: str
    :param session: Existing session. If None, a new session will be created.
    :type session: ~sqlalchemy.orm.session.Session

    Returns:
        ~sqlalchemy.orm.session.Session:
            The current session.

    """
    if session is None:
        session = create_session(db_path)
    _add_field_kinds(session)
    session.commit()
    return session


def _add_field_kinds(session):
    # Names match the field names of the document header
    rationals = FieldKind(name="QQ")
    prime_field = FieldKind(name="Fp")
    session.add_all([rationals, prime_field])
