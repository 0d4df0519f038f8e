"""
Data Parser - loaders for the JSON and text inputs of the command line
Signatures, T/F-models, Tarski models, proofs, set literals, truth values
"""
import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Tuple, Union

from src.core.errors import ModelValidationError, NCLogicError, ProofFormatError
from src.core.formula import Formula, Signature
from src.core.formula_parser import parse, parse_term
from src.core.proofs import (
    AxiomStep, GenExists, GenImp, HypothesisStep, ModusPonens, Proof, ProofLine,
    FORMULA_METAVARS, TERM_METAVARS, VARIABLE_METAVARS,
)
from src.core.semantics import TFModel, validate
from src.core.tarski import FVTarskiModel, validate_tarski
from src.core.truth import TruthValue
from src.core.universe import NCSet, parse_ncset

logger = logging.getLogger(__name__)

Source = Union[str, Path, Mapping[str, Any]]


class DataParser:
    """Input loaders; every malformed document raises an NCLogicError subclass"""

    @staticmethod
    def read_json(source: Source) -> Mapping[str, Any]:
        """Path to a JSON file, or an already decoded mapping"""
        if isinstance(source, Mapping):
            return source
        path = Path(source)
        with open(path, 'r', encoding='utf-8') as f:
            data = json.load(f)
        if not isinstance(data, dict):
            raise NCLogicError(f"{path}: expected a JSON object")
        logger.debug(f"loaded {path}")
        return data

    # -- shape checks ---------------------------------------------------------

    @staticmethod
    def _object(value: Any, what: str, error=ModelValidationError) -> Mapping[str, Any]:
        if not isinstance(value, dict):
            raise error(f"{what} must be an object")
        return value

    @staticmethod
    def _text(value: Any, what: str, error=ModelValidationError) -> str:
        if not isinstance(value, str):
            raise error(f"{what} must be a string")
        return value

    @staticmethod
    def _names(value: Any, what: str, error=ModelValidationError) -> List[str]:
        if not isinstance(value, list) or not all(isinstance(e, str) for e in value):
            raise error(f"{what} must be a list of names")
        return value

    @staticmethod
    def _arity(value: Any, rel: str, error=ModelValidationError) -> int:
        if not isinstance(value, int) or isinstance(value, bool) or value < 0:
            raise error(f"relation '{rel}': arity must be a non-negative integer")
        return value

    @staticmethod
    def _constants(data: Mapping[str, Any], what: str) -> Dict[str, str]:
        constants = DataParser._object(data.get("constants", {}), f"{what}: 'constants'")
        for name, element in constants.items():
            DataParser._text(element, f"{what}: constant '{name}'")
        return dict(constants)

    # -- signatures ---------------------------------------------------------

    @staticmethod
    def load_signature(source: Source) -> Signature:
        data = DataParser.read_json(source)
        relations = DataParser._object(data.get("relations", {}), "signature: 'relations'", NCLogicError)
        constants = DataParser._names(data.get("constants", []), "signature: 'constants'", NCLogicError)
        for rel, arity in relations.items():
            DataParser._arity(arity, rel, NCLogicError)
        return Signature(dict(relations), frozenset(constants))

    # -- models -------------------------------------------------------------

    @staticmethod
    def _domain(data: Mapping[str, Any], what: str) -> Tuple[str, ...]:
        return tuple(DataParser._names(data.get("domain"), f"{what}: 'domain'"))

    @staticmethod
    def _pairs(rows: Any, key: str, width: Optional[int] = None) -> List[Tuple[str, ...]]:
        if not isinstance(rows, list):
            raise ModelValidationError(f"'{key}' must be a list of tuples")
        out = []
        for row in rows:
            if not isinstance(row, list) or not all(isinstance(e, str) for e in row):
                raise ModelValidationError(f"'{key}': {row!r} is not a tuple of names")
            if width is not None and len(row) != width:
                raise ModelValidationError(f"'{key}': {row!r} is not a pair")
            out.append(tuple(row))
        return out

    @staticmethod
    def _relations(data: Mapping[str, Any], what: str) -> Mapping[str, Any]:
        relations = DataParser._object(data.get("relations", {}), f"{what}: 'relations'")
        for rel, spec in relations.items():
            if not isinstance(spec, dict) or "arity" not in spec:
                raise ModelValidationError(f"relation '{rel}': expected an object with an arity")
            DataParser._arity(spec["arity"], rel)
        return relations

    @staticmethod
    def load_model(source: Source) -> TFModel:
        """TFModel JSON; validated before it is returned"""
        data = DataParser.read_json(source)
        domain = DataParser._domain(data, "model")
        relations = {}
        for rel, spec in DataParser._relations(data, "model").items():
            relations[rel] = (
                spec["arity"],
                DataParser._pairs(spec.get("pos", []), f"{rel}.pos"),
                DataParser._pairs(spec.get("neg", []), f"{rel}.neg"),
            )
        model = TFModel.build(
            domain,
            constants=DataParser._constants(data, "model"),
            relations=relations,
            eq_neg=DataParser._pairs(data.get("eq_neg", []), "eq_neg", width=2),
        )
        validate(model)
        return model

    @staticmethod
    def parse_tuple_key(key: str) -> Tuple[str, ...]:
        """'(a,b)' -> ('a', 'b'); '()' -> ()"""
        text = key.strip()
        if not (text.startswith("(") and text.endswith(")")):
            raise ModelValidationError(f"bad tuple key '{key}'")
        inner = text[1:-1].strip()
        return tuple(part.strip() for part in inner.split(",")) if inner else ()

    @staticmethod
    def load_tarski_model(source: Source) -> FVTarskiModel:
        """FVTarskiModel JSON with values named 1, b, n, 0; validated"""
        data = DataParser.read_json(source)
        domain = DataParser._domain(data, "tarski model")
        arities: Dict[str, int] = {}
        rel_value: Dict[str, Dict[Tuple, TruthValue]] = {}
        for rel, spec in DataParser._relations(data, "tarski model").items():
            arities[rel] = spec["arity"]
            values = {}
            for key, name in DataParser._object(spec.get("values", {}), f"relation '{rel}': 'values'").items():
                values[DataParser.parse_tuple_key(key)] = TruthValue.from_name(
                    DataParser._text(name, f"relation '{rel}' at {key}"))
            rel_value[rel] = values
        model = FVTarskiModel(
            domain=domain,
            constants=DataParser._constants(data, "tarski model"),
            arities=arities,
            rel_value=rel_value,
            diseq=frozenset(DataParser._pairs(data.get("diseq", []), "diseq", width=2)),
        )
        validate_tarski(model)
        return model

    # -- proofs -------------------------------------------------------------

    @staticmethod
    def _line_number(value: Any, n: int, key: str) -> int:
        if not isinstance(value, int) or isinstance(value, bool):
            raise ProofFormatError(f"line {n}: '{key}' must be a line number")
        return value

    @staticmethod
    def _justification(raw: Any, n: int, sig: Signature):
        if not isinstance(raw, dict) or len(raw) < 1:
            raise ProofFormatError(f"line {n}: missing justification")
        if "axiom" in raw:
            inst = {}
            given = DataParser._object(raw.get("inst", {}), f"line {n}: 'inst'", ProofFormatError)
            for key, text in given.items():
                text = DataParser._text(text, f"line {n}: metavariable '{key}'", ProofFormatError)
                if key in FORMULA_METAVARS:
                    inst[key] = parse(text, sig)
                elif key in VARIABLE_METAVARS:
                    inst[key] = text.strip()
                elif key in TERM_METAVARS:
                    inst[key] = parse_term(text, sig)
                else:
                    raise ProofFormatError(f"line {n}: unknown metavariable '{key}'")
            return AxiomStep(DataParser._line_number(raw["axiom"], n, "axiom"), inst)
        if "hyp" in raw:
            return HypothesisStep(DataParser._line_number(raw["hyp"], n, "hyp"))
        if "mp" in raw:
            refs = raw["mp"]
            if not isinstance(refs, list) or len(refs) != 2:
                raise ProofFormatError(f"line {n}: 'mp' takes [minor, major]")
            return ModusPonens(*(DataParser._line_number(r, n, "mp") for r in refs))
        if "gen_imp" in raw:
            return GenImp(DataParser._line_number(raw["gen_imp"], n, "gen_imp"))
        if "gen_exists" in raw:
            return GenExists(DataParser._line_number(raw["gen_exists"], n, "gen_exists"))
        raise ProofFormatError(f"line {n}: unknown justification {sorted(raw)}")

    @staticmethod
    def load_proof(source: Source, sig: Signature) -> Proof:
        """
        Proof JSON. Justifications:
            {"axiom": k, "inst": {...}}, {"hyp": i}, {"mp": [i, j]},
            {"gen_imp": i}, {"gen_exists": i}
        Line and hypothesis numbers are 1-based.
        """
        data = DataParser.read_json(source)
        hypotheses = data.get("hypotheses", [])
        lines = data.get("lines")
        if not isinstance(hypotheses, list) or not all(isinstance(h, str) for h in hypotheses):
            raise ProofFormatError("'hypotheses' must be a list of formulas")
        if not isinstance(lines, list) or not lines:
            raise ProofFormatError("'lines' must be a non-empty list")
        proof_lines = []
        for n, raw in enumerate(lines, 1):
            if not isinstance(raw, dict) or not isinstance(raw.get("formula"), str):
                raise ProofFormatError(f"line {n}: expected {{formula, just}}")
            proof_lines.append(ProofLine(parse(raw["formula"], sig),
                                         DataParser._justification(raw.get("just"), n, sig)))
        return Proof([parse(h, sig) for h in hypotheses], proof_lines)

    # -- small values ---------------------------------------------------------

    @staticmethod
    def parse_ncset(text: str) -> NCSet:
        return parse_ncset(text)

    @staticmethod
    def parse_truth_value(name: str) -> TruthValue:
        return TruthValue.from_name(name)

    @staticmethod
    def parse_formulas(texts: List[str], sig: Signature) -> List[Formula]:
        return [parse(t, sig) for t in texts]

    @staticmethod
    def parse_assignment(items: Optional[List[str]], domain: Tuple[str, ...]) -> Dict[str, str]:
        """['x=a', 'y=b'] -> {'x': 'a', 'y': 'b'} with values checked against the domain"""
        env = {}
        for item in items or []:
            name, sep, value = item.partition("=")
            name, value = name.strip(), value.strip()
            if not sep or not name:
                raise NCLogicError(f"bad assignment '{item}' (expected var=element)")
            if value not in domain:
                raise ModelValidationError(f"assignment {name}={value}: not a domain element")
            env[name] = value
        return env

    @staticmethod
    def signature_of_model(model: Union[TFModel, FVTarskiModel]) -> Signature:
        return Signature(dict(model.arities), frozenset(model.constants))