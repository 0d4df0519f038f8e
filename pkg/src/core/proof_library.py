"""
Proof Library - standard derivations and the deduction-theorem battery

deduce() turns a proof of psi from hypotheses Sigma + [phi] into a proof of
phi -> psi from Sigma, line by line, using schemas 1 and 2.
"""
import logging
from typing import Callable, Dict, List, Tuple

from src.core.errors import ProofFormatError
from src.core.formula import And, Formula, Imp, Signature
from src.core.formula_parser import parse
from src.core.proofs import (
    AxiomStep, GenExists, GenImp, HypothesisStep, ModusPonens, Proof, ProofLine, check_proof,
)
from src.core.report import CheckReport

logger = logging.getLogger(__name__)

LIBRARY_SIGNATURE = Signature({"p": 0, "q": 0, "r": 0, "R": 1})


class _Builder:
    """Appends lines and hands back their 1-based numbers"""

    def __init__(self):
        self.lines: List[ProofLine] = []

    def add(self, formula: Formula, just) -> int:
        self.lines.append(ProofLine(formula, just))
        return len(self.lines)

    def identity(self, phi: Formula) -> int:
        """phi -> phi from schemas 1 and 2"""
        pp = Imp(phi, phi)
        a1 = self.add(Imp(phi, Imp(pp, phi)), AxiomStep(1, {"phi": phi, "psi": pp}))
        a2 = self.add(Imp(Imp(phi, Imp(pp, phi)), Imp(Imp(phi, pp), pp)),
                      AxiomStep(2, {"phi": phi, "psi": pp, "chi": phi}))
        m1 = self.add(Imp(Imp(phi, pp), pp), ModusPonens(a1, a2))
        a3 = self.add(Imp(phi, pp), AxiomStep(1, {"phi": phi, "psi": phi}))
        return self.add(pp, ModusPonens(a3, m1))

    def weaken(self, line: int, phi: Formula) -> int:
        """From chi at `line` derive phi -> chi"""
        chi = self.lines[line - 1].formula
        ax = self.add(Imp(chi, Imp(phi, chi)), AxiomStep(1, {"phi": chi, "psi": phi}))
        return self.add(Imp(phi, chi), ModusPonens(line, ax))


def identity_proof(phi: Formula) -> Proof:
    builder = _Builder()
    builder.identity(phi)
    return Proof([], builder.lines)


def deduce(proof: Proof, discharged: int) -> Proof:
    """
    Discharge hypothesis number `discharged` (1-based).

    Generalization steps are kept only when they do not depend on the
    discharged hypothesis; otherwise ProofFormatError is raised.
    """
    if not 1 <= discharged <= len(proof.hypotheses):
        raise ProofFormatError(f"no hypothesis {discharged} to discharge")
    phi = proof.hypotheses[discharged - 1]
    remaining = [h for i, h in enumerate(proof.hypotheses, 1) if i != discharged]

    def renumber(index: int) -> int:
        return index if index < discharged else index - 1

    builder = _Builder()
    plain: Dict[int, int] = {}     # original line -> copy of the line itself
    implied: Dict[int, int] = {}   # original line -> phi -> line
    depends: Dict[int, bool] = {}

    for n, line in enumerate(proof.lines, 1):
        just = line.just
        if isinstance(just, HypothesisStep) and just.index == discharged:
            depends[n] = True
            implied[n] = builder.identity(phi)
            continue
        if isinstance(just, ModusPonens):
            depends[n] = depends[just.minor] or depends[just.major]
        elif isinstance(just, (GenImp, GenExists)):
            depends[n] = depends[just.premise]
            if depends[n]:
                raise ProofFormatError(
                    f"line {n}: generalization depends on the discharged hypothesis")
        else:
            depends[n] = False

        if not depends[n]:
            if isinstance(just, HypothesisStep):
                new_just = HypothesisStep(renumber(just.index))
            elif isinstance(just, ModusPonens):
                new_just = ModusPonens(plain[just.minor], plain[just.major])
            elif isinstance(just, GenImp):
                new_just = GenImp(plain[just.premise])
            elif isinstance(just, GenExists):
                new_just = GenExists(plain[just.premise])
            else:
                new_just = just
            plain[n] = builder.add(line.formula, new_just)
            implied[n] = builder.weaken(plain[n], phi)
            continue

        # modus ponens with phi -> chi_j and phi -> (chi_j -> chi_n) available
        minor = proof.lines[just.minor - 1].formula
        chi = line.formula
        ax = builder.add(
            Imp(Imp(phi, Imp(minor, chi)), Imp(Imp(phi, minor), Imp(phi, chi))),
            AxiomStep(2, {"phi": phi, "psi": minor, "chi": chi}))
        step = builder.add(Imp(Imp(phi, minor), Imp(phi, chi)), ModusPonens(implied[just.major], ax))
        implied[n] = builder.add(Imp(phi, chi), ModusPonens(implied[just.minor], step))

    return Proof(remaining, builder.lines)


def _p(text: str) -> Formula:
    return parse(text, LIBRARY_SIGNATURE)


def _hypothetical_syllogism() -> Proof:
    """p -> q, q -> r, p |- r"""
    return Proof([_p("p() -> q()"), _p("q() -> r()"), _p("p()")], [
        ProofLine(_p("p()"), HypothesisStep(3)),
        ProofLine(_p("p() -> q()"), HypothesisStep(1)),
        ProofLine(_p("q()"), ModusPonens(1, 2)),
        ProofLine(_p("q() -> r()"), HypothesisStep(2)),
        ProofLine(_p("r()"), ModusPonens(3, 4)),
    ])


def _conjunction_intro() -> Proof:
    """q, p |- p & q"""
    p, q = _p("p()"), _p("q()")
    return Proof([q, p], [
        ProofLine(p, HypothesisStep(2)),
        ProofLine(q, HypothesisStep(1)),
        ProofLine(Imp(p, Imp(q, And(p, q))), AxiomStep(6, {"phi": p, "psi": q})),
        ProofLine(Imp(q, And(p, q)), ModusPonens(1, 3)),
        ProofLine(And(p, q), ModusPonens(2, 4)),
    ])


def _negation_axiom() -> Proof:
    """p |- ~~q <-> q, an axiom line that never uses p"""
    q = _p("q()")
    return Proof([_p("p()")], [ProofLine(_p("~~q() <-> q()"), AxiomStep(15, {"phi": q}))])


def _generalized_side_premise() -> Proof:
    """R(x) -> R(x), p |- p with a generalization step that never uses p"""
    rx = _p("R(x)")
    pp = Imp(rx, rx)
    return Proof([pp, _p("p()")], [
        ProofLine(pp, HypothesisStep(1)),
        ProofLine(_p("R(x) -> forall y. R(x)"), GenImp(1)),
        ProofLine(_p("p()"), HypothesisStep(2)),
    ])


def _weakening() -> Proof:
    """q, p |- q"""
    return Proof([_p("q()"), _p("p()")], [ProofLine(_p("q()"), HypothesisStep(1))])


CURATED: Dict[str, Tuple[Callable[[], Proof], int]] = {
    "hypothetical_syllogism": (_hypothetical_syllogism, 3),
    "conjunction_intro": (_conjunction_intro, 2),
    "negation_axiom": (_negation_axiom, 1),
    "generalization_untouched": (_generalized_side_premise, 2),
    "weakening": (_weakening, 2),
}


def deduction_pairs() -> List[Tuple[str, Proof, Proof]]:
    """(name, proof with the hypothesis, proof of the implication without it)"""
    return [(name, build(), deduce(build(), index)) for name, (build, index) in CURATED.items()]


def check_deduction_pairs() -> CheckReport:
    report = CheckReport("deduction_pairs", params={"pairs": len(CURATED)})
    for name, (build, index) in CURATED.items():
        with_hyp = build()
        without = deduce(with_hyp, index)
        before, after = check_proof(with_hyp), check_proof(without)
        expected = Imp(with_hyp.hypotheses[index - 1], with_hyp.conclusion)
        report.expect(before.accepted, pair=name, side="with hypothesis", reason=before.reason)
        report.expect(after.accepted, pair=name, side="discharged", reason=after.reason)
        report.expect(without.conclusion == expected, pair=name, side="conclusion")
    logger.debug(f"deduction pairs: {report.checked} checks, {report.failure_count} failures")
    return report


def standard_proofs() -> Dict[str, Proof]:
    return {"identity": identity_proof(_p("p()"))}