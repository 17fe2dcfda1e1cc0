"""
marshmallow schemas for every value the package reads or writes.

Sections travel as expression trees: each node is an object with a `kind`
discriminator plus the fields of that kind. Reports carry the report schema
version and their kind.
"""
from typing import Any, ClassVar, Dict, List, Mapping, Optional, Tuple, Type

import numpy as np
from marshmallow import EXCLUDE, Schema, fields, post_dump, post_load
from marshmallow import ValidationError as SchemaValidationError

from torus_pmra import reports
from torus_pmra.analysis.grid import GridSamples, LatticeSumResult
from torus_pmra.analysis.sections import (
    ClosedFormHaar,
    CosineBump,
    Dilated,
    MeyerScaling,
    MeyerWavelet,
    Modulated,
    Product,
    QuasiPeriodicTheta,
    Scaled,
    Section,
    Shifted,
    Sum,
    TensorProduct,
    TrigPolynomial,
    TruncatedProduct,
)
from torus_pmra.config import RunConfig, RunConfigSchema
from torus_pmra.exceptions import SerializationError, TorusPmraError
from torus_pmra.filters.bank import FilterBank, haar_filter_bank
from torus_pmra.filters.trigpoly import MultiTrigPoly
from torus_pmra.frames.frame import FrameSet
from torus_pmra.ktheory.classes import KClass, ModuleDescriptor
from torus_pmra.ktheory.exterior import ExtElement
from torus_pmra.ktheory.pushforward import LevelReport
from torus_pmra.lattice.cosets import CosetTable, coset_table
from torus_pmra.lattice.dilation import (
    DilationSpec,
    conjugate_spec,
    diagonal_dilation,
    validate_dilation,
)
from torus_pmra.lattice.unimodular import UnimodularCompletion, Witnesses


class ComplexField(fields.Field):
    """Complex numbers as {"re": .., "im": ..}."""

    def _serialize(self, value: Any, attr: Any, obj: Any, **kwargs: Any) -> Any:
        if value is None:
            return None
        value = complex(value)
        return {"re": value.real, "im": value.imag}

    def _deserialize(self, value: Any, attr: Any, data: Any, **kwargs: Any) -> Any:
        try:
            return complex(float(value["re"]), float(value["im"]))
        except (KeyError, TypeError, ValueError) as e:
            raise SchemaValidationError(f"Not a complex number: {value!r}") from e


class DomainSchema(Schema):
    """Builds the domain value through the validated constructors on load."""

    class Meta:
        unknown = EXCLUDE


class DilationSpecSchema(DomainSchema):
    matrix = fields.List(
        fields.List(fields.Integer()), required=True, attribute="entries"
    )
    conjugator = fields.List(fields.List(fields.Integer()), allow_none=True)
    form = fields.Function(lambda spec: spec.form.value, dump_only=True)
    det = fields.Integer(dump_only=True)
    diagonal = fields.List(fields.Integer(), allow_none=True)

    @post_load
    def make(self, data: Dict, **kwargs: Any) -> DilationSpec:
        conjugator = data.get("conjugator")
        factors = data.get("diagonal")
        if conjugator is None or not factors:
            return validate_dilation(data["entries"], conjugator)
        # M = S^-1 diag(d) S may itself be diagonal, so rebuild from the factors
        spec = conjugate_spec(conjugator, diagonal_dilation(*factors))
        if [list(row) for row in spec.entries] != data["entries"]:
            raise SchemaValidationError("Matrix differs from S^-1 diag(d) S")
        return spec


class CosetTableSchema(DomainSchema):
    spec = fields.Nested(DilationSpecSchema, required=True)
    level = fields.Integer(required=True)
    reps = fields.List(fields.List(fields.Integer()), required=True)

    @post_load
    def make(self, data: Dict, **kwargs: Any) -> CosetTable:
        table = coset_table(data["spec"], data["level"])
        if [list(r) for r in table.reps] != data["reps"]:
            raise SchemaValidationError("Representatives differ from the table")
        return table


def _sorted_terms(elem: ExtElement) -> List[Dict[str, Any]]:
    return [
        {"indices": list(indices), "coeff": coeff}
        for indices, coeff in sorted(elem.terms, key=lambda t: (len(t[0]), t[0]))
    ]


class MonomialSchema(Schema):
    indices = fields.List(fields.Integer(), required=True)
    coeff = fields.Integer(required=True)


class ExtElementSchema(DomainSchema):
    n = fields.Integer(required=True)
    terms = fields.Function(
        _sorted_terms,
        deserialize=lambda value: MonomialSchema(many=True).load(value),
        required=True,
    )

    @post_load
    def make(self, data: Dict, **kwargs: Any) -> ExtElement:
        return ExtElement.from_coeffs(
            data["n"], {tuple(t["indices"]): t["coeff"] for t in data["terms"]}
        )


class KClassSchema(DomainSchema):
    n = fields.Integer(required=True)
    terms = fields.Function(
        lambda k: _sorted_terms(k.elem),
        deserialize=lambda value: MonomialSchema(many=True).load(value),
        required=True,
    )
    rank = fields.Integer(dump_only=True)

    @post_load
    def make(self, data: Dict, **kwargs: Any) -> KClass:
        return KClass(ExtElementSchema().make(data))


class ModuleDescriptorSchema(DomainSchema):
    q = fields.Integer(required=True)
    twists = fields.List(fields.Integer())
    conjugator = fields.List(fields.List(fields.Integer()), allow_none=True)

    @post_load
    def make(self, data: Dict, **kwargs: Any) -> ModuleDescriptor:
        conjugator = data.get("conjugator")
        return ModuleDescriptor(
            q=data["q"],
            twists=tuple(data.get("twists", ())),
            conjugator=tuple(tuple(r) for r in conjugator) if conjugator else None,
        )


class WitnessesSchema(DomainSchema):
    b11 = fields.Integer(required=True)
    b12 = fields.Integer(required=True)
    b13 = fields.Integer(required=True)
    nu = fields.Integer(required=True)
    alpha = fields.Integer(required=True)
    beta = fields.Integer(required=True)
    sigma = fields.Integer(required=True)
    tau = fields.Integer(required=True)

    @post_load
    def make(self, data: Dict, **kwargs: Any) -> Witnesses:
        return Witnesses(**data)


class UnimodularCompletionSchema(DomainSchema):
    target = fields.List(fields.Integer(), required=True)
    matrix = fields.List(fields.List(fields.Integer()), required=True)
    witnesses = fields.Nested(WitnessesSchema, required=True)

    @post_load
    def make(self, data: Dict, **kwargs: Any) -> UnimodularCompletion:
        return UnimodularCompletion(
            target=tuple(data["target"]),
            matrix=tuple(tuple(r) for r in data["matrix"]),
            witnesses=data["witnesses"],
        )


class TrigTermSchema(Schema):
    frequency = fields.Integer(required=True)
    coeff = ComplexField(required=True)


class FilterSchema(Schema):
    period = fields.Function(lambda p: str(p.period))
    terms = fields.Function(
        lambda p: TrigTermSchema(many=True).dump(
            [{"frequency": j, "coeff": c} for j, c in p.terms]
        )
    )


class FilterBankSchema(DomainSchema):
    d = fields.Integer(required=True)
    source = fields.List(fields.List(ComplexField()), required=True)
    filters = fields.List(fields.Nested(FilterSchema), dump_only=True)

    @post_load
    def make(self, data: Dict, **kwargs: Any) -> FilterBank:
        return haar_filter_bank(data["d"], completion=np.array(data["source"]))


class MultiTermSchema(Schema):
    frequency = fields.List(fields.Integer(), required=True)
    coeff = ComplexField(required=True)


class MultiTrigPolySchema(DomainSchema):
    n = fields.Integer(required=True)
    terms = fields.Function(
        lambda p: MultiTermSchema(many=True).dump(
            [{"frequency": list(k), "coeff": c} for k, c in p.terms]
        ),
        deserialize=lambda value: MultiTermSchema(many=True).load(value),
        required=True,
    )

    @post_load
    def make(self, data: Dict, **kwargs: Any) -> MultiTrigPoly:
        return MultiTrigPoly(
            data["n"],
            tuple((tuple(t["frequency"]), t["coeff"]) for t in data["terms"]),
        )


class SectionField(fields.Field):
    """A nested section node, dispatched on its `kind`."""

    def _serialize(self, value: Any, attr: Any, obj: Any, **kwargs: Any) -> Any:
        if value is None:
            return None
        return dump_section(value)

    def _deserialize(self, value: Any, attr: Any, data: Any, **kwargs: Any) -> Any:
        return load_section(value)


class SectionNodeSchema(DomainSchema):
    model: ClassVar[Type[Section]]

    @post_load
    def make(self, data: Dict, **kwargs: Any) -> Section:
        frozen = {k: tuple(v) if isinstance(v, list) else v for k, v in data.items()}
        return self.model(**frozen)  # type: ignore


class ClosedFormHaarSchema(SectionNodeSchema):
    model = ClosedFormHaar
    d = fields.Integer(required=True)


class TrigPolynomialSchema(SectionNodeSchema):
    model = TrigPolynomial
    poly = fields.Nested(MultiTrigPolySchema, required=True)


class TensorProductSchema(SectionNodeSchema):
    model = TensorProduct
    factors = fields.List(SectionField(), required=True)


class TruncatedProductSchema(SectionNodeSchema):
    model = TruncatedProduct
    mask = fields.Nested(MultiTrigPolySchema, required=True)
    depth = fields.Integer(required=True)
    spec = fields.Nested(DilationSpecSchema, required=True)


class DilatedSchema(SectionNodeSchema):
    model = Dilated
    spec = fields.Nested(DilationSpecSchema, required=True)
    inner = SectionField(required=True)
    power = fields.Integer(required=True)


class ModulatedSchema(SectionNodeSchema):
    model = Modulated
    v = fields.List(fields.Integer(), required=True)
    inner = SectionField(required=True)


class SumSchema(SectionNodeSchema):
    model = Sum
    terms = fields.List(SectionField(), required=True)


class ScaledSchema(SectionNodeSchema):
    model = Scaled
    factor = ComplexField(required=True)
    inner = SectionField(required=True)


class ProductSchema(SectionNodeSchema):
    model = Product
    factors = fields.List(SectionField(), required=True)


class ShiftedSchema(SectionNodeSchema):
    model = Shifted
    delta = fields.List(fields.Float(), required=True)
    inner = SectionField(required=True)


class MeyerScalingSchema(SectionNodeSchema):
    model = MeyerScaling


class MeyerWaveletSchema(SectionNodeSchema):
    model = MeyerWavelet


class CosineBumpSchema(SectionNodeSchema):
    model = CosineBump
    radius = fields.Float(required=True)
    power = fields.Integer(required=True)
    dimension = fields.Integer(required=True)


class QuasiPeriodicThetaSchema(SectionNodeSchema):
    model = QuasiPeriodicTheta
    q = fields.Integer(required=True)
    twists = fields.List(fields.Integer(), required=True)
    profile = SectionField(required=True)
    window = SectionField(allow_none=True)


SECTION_SCHEMAS: Dict[str, Type[SectionNodeSchema]] = {
    schema.model.kind: schema
    for schema in (
        ClosedFormHaarSchema,
        TrigPolynomialSchema,
        TensorProductSchema,
        TruncatedProductSchema,
        DilatedSchema,
        ModulatedSchema,
        SumSchema,
        ScaledSchema,
        ProductSchema,
        ShiftedSchema,
        MeyerScalingSchema,
        MeyerWaveletSchema,
        CosineBumpSchema,
        QuasiPeriodicThetaSchema,
    )
}


def dump_section(section: Section) -> Dict[str, Any]:
    schema = SECTION_SCHEMAS.get(section.kind)
    if schema is None:
        raise SerializationError(f"No schema for section kind {section.kind!r}")
    data = schema().dump(section)
    data["kind"] = section.kind
    return data


def load_section(payload: Any) -> Section:
    if not isinstance(payload, Mapping) or "kind" not in payload:
        raise SchemaValidationError(f"Section nodes need a kind: {payload!r}")
    schema = SECTION_SCHEMAS.get(payload["kind"])
    if schema is None:
        raise SchemaValidationError(f"Unknown section kind {payload['kind']!r}")
    try:
        return schema().load({k: v for k, v in payload.items() if k != "kind"})
    except TorusPmraError as e:
        raise SchemaValidationError(str(e)) from e


class SectionSchema(Schema):
    """Top-level section documents."""

    def dump(self, obj: Any, *, many: Optional[bool] = None) -> Any:
        return dump_section(obj)

    def load(self, data: Any, *args: Any, **kwargs: Any) -> Any:
        return load_section(data)


class GridSamplesSchema(Schema):
    points = fields.Function(lambda s: s.points.tolist())
    values = fields.Function(
        lambda s: [{"re": float(v.real), "im": float(v.imag)} for v in s.values]
    )


class LatticeSumResultSchema(Schema):
    samples = fields.Nested(GridSamplesSchema)
    radius = fields.Integer()
    tail_bound = fields.Float()


class FrameElementSchema(Schema):
    level = fields.Integer()
    coset = fields.Integer()
    generator = fields.Integer()
    tag = fields.Function(lambda e: e.tag.value)
    section = SectionField()


class FrameSetSchema(Schema):
    """The frame manifest: spec, depth and element descriptors."""

    spec = fields.Nested(DilationSpecSchema)
    depth = fields.Integer()
    scaling_count = fields.Integer()
    wavelet_count = fields.Integer()
    element_count = fields.Function(lambda fs: len(fs.elements))
    elements = fields.List(fields.Nested(FrameElementSchema))


class VersionedSchema(DomainSchema):
    """Stamps the report schema version and the report kind."""

    model: ClassVar[Type]

    @post_dump
    def stamp(self, data: Dict, **kwargs: Any) -> Dict:
        data["schema"] = reports.REPORT_SCHEMA_VERSION
        data["kind"] = self.model.kind
        return data

    @post_load
    def make(self, data: Dict, **kwargs: Any) -> Any:
        return self.model(**data)


class FilterBankReportSchema(VersionedSchema):
    model = reports.FilterBankReport
    d = fields.Integer()
    grid_points = fields.Integer()
    tol = fields.Float()
    m0_origin_error = fields.Float()
    gram_error = fields.Float()
    cohen_min = fields.Float()
    passed = fields.Boolean()


class TensorFilterReportSchema(VersionedSchema):
    model = reports.TensorFilterReport
    factors = fields.Function(lambda r: list(r.factors), deserialize=tuple)
    grid_points = fields.Integer()
    tol = fields.Float()
    origin_error = fields.Float()
    translate_sum_error = fields.Float()
    passed = fields.Boolean()


class ScalingFunctionReportSchema(VersionedSchema):
    model = reports.ScalingFunctionReport
    d = fields.Integer()
    depth = fields.Integer()
    points = fields.Integer()
    window = fields.Function(lambda r: list(r.window), deserialize=tuple)
    max_error = fields.Float()
    tol = fields.Float()
    passed = fields.Boolean()


class XiMembershipReportSchema(VersionedSchema):
    model = reports.XiMembershipReport
    n = fields.Integer()
    grid = fields.Integer()
    radius = fields.Integer()
    sup_sum = fields.Float()
    min_sum = fields.Float()
    tail_bound = fields.Float(allow_nan=True)
    tol = fields.Float()
    passed = fields.Boolean()


class RefinementReportSchema(VersionedSchema):
    model = reports.RefinementReport
    n = fields.Integer()
    grid = fields.Integer()
    max_error = fields.Float()
    tol = fields.Float()
    passed = fields.Boolean()


class UnitNormReportSchema(VersionedSchema):
    model = reports.UnitNormReport
    n = fields.Integer()
    q = fields.Integer()
    grid = fields.Integer()
    radius = fields.Integer()
    max_deviation = fields.Float()
    tail_bound = fields.Float(allow_nan=True)
    tol = fields.Float()
    passed = fields.Boolean()


class ReconstructionReportSchema(VersionedSchema):
    model = reports.ReconstructionReport
    level = fields.Integer()
    include_scaling = fields.Boolean()
    element_count = fields.Integer()
    grid = fields.Integer()
    radius = fields.Integer()
    residual = fields.Float()
    tail_bound = fields.Float(allow_nan=True)
    tol = fields.Float()
    passed = fields.Boolean()


class FrameReportSchema(VersionedSchema):
    model = reports.FrameReport
    level = fields.Integer()
    corpus_size = fields.Integer()
    max_residual = fields.Float()
    reconstructions = fields.List(fields.Nested(ReconstructionReportSchema))
    passed = fields.Boolean()

    @post_load
    def make(self, data: Dict, **kwargs: Any) -> Any:
        data["reconstructions"] = tuple(data["reconstructions"])
        return self.model(**data)


class GramReportSchema(VersionedSchema):
    model = reports.GramReport
    level = fields.Integer()
    element_count = fields.Integer()
    grid = fields.Integer()
    radius = fields.Integer()
    deviations = fields.Function(
        lambda r: [list(row) for row in r.deviations],
        deserialize=lambda rows: tuple(tuple(row) for row in rows),
    )
    max_deviation = fields.Float()
    tail_bound = fields.Float(allow_nan=True)
    tol = fields.Float()
    passed = fields.Boolean()


class FreeRankReportSchema(VersionedSchema):
    model = reports.FreeRankReport
    level = fields.Integer()
    claimed_rank = fields.Integer()
    element_count = fields.Integer()
    gram = fields.Nested(GramReportSchema)
    passed = fields.Boolean()


class DensityReportSchema(VersionedSchema):
    model = reports.DensityReport
    residuals = fields.Function(lambda r: list(r.residuals), deserialize=tuple)
    monotone = fields.Boolean()
    passed = fields.Boolean()


class WaveletClassSchema(Schema):
    level = fields.Integer()
    k_class = fields.Nested(KClassSchema)
    cancellation_valid = fields.Boolean()
    descriptor = fields.Nested(ModuleDescriptorSchema, allow_none=True)


class LevelEntrySchema(Schema):
    level = fields.Integer()
    module = fields.Nested(ModuleDescriptorSchema)
    k_class = fields.Nested(KClassSchema)
    wavelet = fields.Nested(WaveletClassSchema)


class LevelReportSchema(Schema):
    spec = fields.Nested(DilationSpecSchema)
    base = fields.Nested(ModuleDescriptorSchema)
    cancellation_valid = fields.Boolean()
    levels = fields.List(fields.Nested(LevelEntrySchema))

    @post_dump
    def stamp(self, data: Dict, **kwargs: Any) -> Dict:
        data["schema"] = reports.REPORT_SCHEMA_VERSION
        data["kind"] = "k0_levels"
        return data


class RunConfigDumpSchema(RunConfigSchema):
    @post_load
    def make(self, data: Dict, **kwargs: Any) -> RunConfig:
        return RunConfig(**data)


# Most specific types first; the first isinstance match wins
SCHEMA_BINDINGS: Tuple[Tuple[Type, Type[Schema]], ...] = (
    (Section, SectionSchema),
    (DilationSpec, DilationSpecSchema),
    (CosetTable, CosetTableSchema),
    (KClass, KClassSchema),
    (ExtElement, ExtElementSchema),
    (ModuleDescriptor, ModuleDescriptorSchema),
    (UnimodularCompletion, UnimodularCompletionSchema),
    (FilterBank, FilterBankSchema),
    (MultiTrigPoly, MultiTrigPolySchema),
    (LatticeSumResult, LatticeSumResultSchema),
    (GridSamples, GridSamplesSchema),
    (FrameSet, FrameSetSchema),
    (LevelReport, LevelReportSchema),
    (RunConfig, RunConfigDumpSchema),
    (reports.FilterBankReport, FilterBankReportSchema),
    (reports.TensorFilterReport, TensorFilterReportSchema),
    (reports.ScalingFunctionReport, ScalingFunctionReportSchema),
    (reports.XiMembershipReport, XiMembershipReportSchema),
    (reports.RefinementReport, RefinementReportSchema),
    (reports.UnitNormReport, UnitNormReportSchema),
    (reports.ReconstructionReport, ReconstructionReportSchema),
    (reports.FrameReport, FrameReportSchema),
    (reports.GramReport, GramReportSchema),
    (reports.FreeRankReport, FreeRankReportSchema),
    (reports.DensityReport, DensityReportSchema),
)

# Manifests of the values that can be read back
LOADERS: Dict[str, Type[Schema]] = {
    "section": SectionSchema,
    "dilation_spec": DilationSpecSchema,
    "coset_table": CosetTableSchema,
    "k_class": KClassSchema,
    "ext_element": ExtElementSchema,
    "module": ModuleDescriptorSchema,
    "unimodular_completion": UnimodularCompletionSchema,
    "haar_bank": FilterBankSchema,
    "multi_trig_poly": MultiTrigPolySchema,
    "run_config": RunConfigDumpSchema,
    **{
        schema.model.kind: schema
        for _, schema in SCHEMA_BINDINGS
        if issubclass(schema, VersionedSchema)
    },
}

MANIFESTS: Dict[Type, str] = {
    Section: "section",
    DilationSpec: "dilation_spec",
    CosetTable: "coset_table",
    KClass: "k_class",
    ExtElement: "ext_element",
    ModuleDescriptor: "module",
    UnimodularCompletion: "unimodular_completion",
    FilterBank: "haar_bank",
    MultiTrigPoly: "multi_trig_poly",
    LatticeSumResult: "lattice_sum",
    GridSamples: "grid_samples",
    FrameSet: "frame_manifest",
    LevelReport: "k0_levels",
    RunConfig: "run_config",
}


def schema_for(value: Any) -> Schema:
    for klass, schema in SCHEMA_BINDINGS:
        if isinstance(value, klass):
            return schema()
    raise SerializationError(f"No schema for values of type {type(value).__name__}")


def manifest_for(value: Any) -> Optional[str]:
    for klass, name in MANIFESTS.items():
        if isinstance(value, klass):
            return name
    return getattr(value, "kind", None)


def dump(value: Any) -> Dict[str, Any]:
    return schema_for(value).dump(value)


def load(manifest: str, payload: Any) -> Any:
    schema = LOADERS.get(manifest)
    if schema is None:
        raise SerializationError(f"Values of kind {manifest!r} cannot be loaded")
    try:
        return schema().load(payload)
    except SchemaValidationError as e:
        raise SerializationError(f"Invalid {manifest} payload: {e.messages}") from e
    except TorusPmraError as e:
        raise SerializationError(f"Invalid {manifest} payload: {e}") from e
