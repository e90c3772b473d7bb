"""Parser and unparser for the feature-model language (`.fm` files).

The grammar (docs/feature-model.ebnf):

    file        = modelDecl featureDecl { constraintDecl | hazardDecl } ;
    modelDecl   = "model" IDENT ;
    featureDecl = "feature" IDENT [ "abstract" ] block ;
    block       = "{" { child } "}" ;
    child       = ("mandatory" | "optional") IDENT [ "abstract" ] block
                | "group" ("or" | "xor") "{" groupChild { groupChild } "}" ;
    groupChild  = IDENT [ "abstract" ] block ;
    constraintDecl = "constraint" expr ;
    expr        = IDENT
                | ("and" | "or" | "xor") "(" expr "," expr { "," expr } ")"
                | "not" "(" expr ")"
                | ("implies" | "iff") "(" expr "," expr ")" ;
    hazardDecl  = "hazard" IDENT STRING "{" { hazardField } "}" ;
    hazardField = ("contributes" | "mitigates" | "nodes") ":" IDENT { "," IDENT } ;

Line comments start with `//`. Identifiers match [A-Za-z][A-Za-z0-9_]*;
keywords are reserved and cannot name features. Anything outside the
grammar is rejected with a positioned ParseError; well-formed text that
breaks model rules (duplicate names, undersized groups, unknown references)
raises SemanticError.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

from ..logic import And, ExactlyOne, Formula, Iff, Implies, Not, Or, Var, to_text
from .model import Configuration, Feature, FeatureModel, GroupKind, HazardTrace, Optionality

KEYWORDS = {
    "model", "feature", "abstract", "mandatory", "optional", "group",
    "constraint", "hazard", "contributes", "mitigates", "nodes",
    "and", "or", "xor", "not", "implies", "iff", "true", "false",
}

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r]+)
  | (?P<comment>//[^\n]*)
  | (?P<newline>\n)
  | (?P<string>"(?:[^"\\]|\\.)*")
  | (?P<ident>[A-Za-z][A-Za-z0-9_]*)
  | (?P<punct>[{}(),:])
    """,
    re.VERBOSE,
)


class ParseError(Exception):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{line}:{column}: {message}")
        self.line = line
        self.column = column


class SemanticError(Exception):
    pass


@dataclass(frozen=True)
class Token:
    kind: str  # "ident" | "string" | "punct" | "eof"
    text: str
    line: int
    column: int


def _tokenize(source: str) -> list[Token]:
    tokens: list[Token] = []
    line, col, pos = 1, 1, 0
    while pos < len(source):
        m = _TOKEN_RE.match(source, pos)
        if m is None:
            raise ParseError(f"unexpected character {source[pos]!r}", line, col)
        kind = m.lastgroup
        text = m.group()
        if kind == "newline":
            line += 1
            col = 1
        else:
            if kind in ("ident", "string", "punct"):
                tokens.append(Token(kind, text, line, col))
            col += len(text)
        pos = m.end()
    tokens.append(Token("eof", "", line, col))
    return tokens


class _Parser:
    def __init__(self, source: str):
        self.tokens = _tokenize(source)
        self.pos = 0
        self.features: dict[str, Feature] = {}
        self.constraints: list[Formula] = []
        self.hazards: list[HazardTrace] = []

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def error(self, message: str) -> ParseError:
        tok = self.peek()
        return ParseError(message, tok.line, tok.column)

    def expect_punct(self, text: str) -> Token:
        tok = self.peek()
        if tok.kind != "punct" or tok.text != text:
            raise self.error(f"expected {text!r}, found {tok.text or 'end of input'!r}")
        return self.advance()

    def expect_keyword(self, word: str) -> Token:
        tok = self.peek()
        if tok.kind != "ident" or tok.text != word:
            raise self.error(f"expected {word!r}, found {tok.text or 'end of input'!r}")
        return self.advance()

    def expect_name(self) -> Token:
        tok = self.peek()
        if tok.kind != "ident":
            raise self.error(f"expected a name, found {tok.text or 'end of input'!r}")
        if tok.text in KEYWORDS:
            raise self.error(f"{tok.text!r} is a reserved word and cannot name a feature")
        return self.advance()

    def at_keyword(self, word: str) -> bool:
        tok = self.peek()
        return tok.kind == "ident" and tok.text == word

    # --- grammar ---------------------------------------------------------

    def parse(self) -> FeatureModel:
        self.expect_keyword("model")
        model_name = self.expect_name().text
        self.expect_keyword("feature")
        root_tok = self.expect_name()
        root_abstract = self._maybe_abstract()
        self._declare(root_tok, parent=None, optionality=Optionality.MANDATORY,
                      is_abstract=root_abstract)
        self._block(root_tok.text)
        while not self.at_eof():
            if self.at_keyword("constraint"):
                self.advance()
                self.constraints.append(self._expr())
            elif self.at_keyword("hazard"):
                self._hazard()
            else:
                raise self.error(
                    f"expected 'constraint' or 'hazard', found {self.peek().text!r}"
                )
        model = FeatureModel(
            name=model_name,
            root=root_tok.text,
            features=self.features,
            cross_tree_constraints=tuple(self.constraints),
            hazard_traces=tuple(self.hazards),
        )
        try:
            model.validate()
        except ValueError as exc:
            raise SemanticError(str(exc)) from exc
        return model

    def at_eof(self) -> bool:
        return self.peek().kind == "eof"

    def _maybe_abstract(self) -> bool:
        if self.at_keyword("abstract"):
            self.advance()
            return True
        return False

    def _declare(self, tok: Token, parent: Optional[str],
                 optionality: Optional[Optionality], is_abstract: bool) -> None:
        if tok.text in self.features:
            raise SemanticError(f"duplicate feature name {tok.text!r} (line {tok.line})")
        self.features[tok.text] = Feature(
            name=tok.text, parent=parent, optionality=optionality,
            is_abstract=is_abstract,
        )

    def _set_children(self, name: str, children: list[str], kind: GroupKind) -> None:
        feat = self.features[name]
        if children:
            self.features[name] = Feature(
                name=feat.name, parent=feat.parent, optionality=feat.optionality,
                group_kind=kind, is_abstract=feat.is_abstract, children=tuple(children),
            )

    def _block(self, parent: str) -> None:
        self.expect_punct("{")
        children: list[str] = []
        group_kind = GroupKind.AND
        saw_flagged = False
        saw_group = False
        while not (self.peek().kind == "punct" and self.peek().text == "}"):
            if self.at_keyword("mandatory") or self.at_keyword("optional"):
                if saw_group:
                    raise self.error("cannot mix flagged children with a group under one parent")
                saw_flagged = True
                optionality = Optionality(self.advance().text)
                tok = self.expect_name()
                is_abstract = self._maybe_abstract()
                self._declare(tok, parent, optionality, is_abstract)
                children.append(tok.text)
                self._block(tok.text)
            elif self.at_keyword("group"):
                if saw_flagged or saw_group:
                    raise self.error("a feature may own at most one group and no mixed children")
                saw_group = True
                self.advance()
                if self.at_keyword("or"):
                    group_kind = GroupKind.OR
                elif self.at_keyword("xor"):
                    group_kind = GroupKind.XOR
                else:
                    raise self.error("expected 'or' or 'xor' after 'group'")
                self.advance()
                self.expect_punct("{")
                members: list[str] = []
                while not (self.peek().kind == "punct" and self.peek().text == "}"):
                    tok = self.expect_name()
                    is_abstract = self._maybe_abstract()
                    self._declare(tok, parent, None, is_abstract)
                    members.append(tok.text)
                    self._block(tok.text)
                self.expect_punct("}")
                if len(members) < 2:
                    raise SemanticError(
                        f"{group_kind.value} group under {parent!r} needs >= 2 children"
                    )
                children.extend(members)
            else:
                raise self.error(
                    f"expected 'mandatory', 'optional', 'group' or '}}', found {self.peek().text!r}"
                )
        self.expect_punct("}")
        self._set_children(parent, children, group_kind if saw_group else
                           (GroupKind.AND if children else GroupKind.NONE))

    def _expr(self) -> Formula:
        tok = self.peek()
        if tok.kind != "ident":
            raise self.error(f"expected an expression, found {tok.text or 'end of input'!r}")
        if tok.text in ("and", "or", "xor", "not", "implies", "iff"):
            op = self.advance().text
            self.expect_punct("(")
            args = [self._expr()]
            while self.peek().kind == "punct" and self.peek().text == ",":
                self.advance()
                args.append(self._expr())
            self.expect_punct(")")
            if op == "not":
                if len(args) != 1:
                    raise SemanticError("not() takes exactly one argument")
                return Not(args[0])
            if op in ("implies", "iff"):
                if len(args) != 2:
                    raise SemanticError(f"{op}() takes exactly two arguments")
                return Implies(*args) if op == "implies" else Iff(*args)
            if len(args) < 2:
                raise SemanticError(f"{op}() takes at least two arguments")
            return {"and": And, "or": Or, "xor": ExactlyOne}[op](*args)
        name = self.expect_name()
        return Var(name.text)

    def _hazard(self) -> None:
        self.expect_keyword("hazard")
        hazard_id = self.expect_name().text
        tok = self.peek()
        if tok.kind != "string":
            raise self.error("expected a quoted hazard description")
        description = self.advance().text[1:-1].replace('\\"', '"')
        self.expect_punct("{")
        fields: dict[str, tuple[str, ...]] = {}
        while not (self.peek().kind == "punct" and self.peek().text == "}"):
            key_tok = self.peek()
            if key_tok.kind != "ident" or key_tok.text not in ("contributes", "mitigates", "nodes"):
                raise self.error("expected 'contributes', 'mitigates' or 'nodes'")
            key = self.advance().text
            self.expect_punct(":")
            names = [self._hazard_ref()]
            while self.peek().kind == "punct" and self.peek().text == ",":
                self.advance()
                names.append(self._hazard_ref())
            if key in fields:
                raise SemanticError(f"hazard {hazard_id!r} repeats field {key!r}")
            fields[key] = tuple(names)
        self.expect_punct("}")
        self.hazards.append(HazardTrace(
            hazard_id=hazard_id,
            description=description,
            contributing_features=fields.get("contributes", ()),
            mitigating_features=fields.get("mitigates", ()),
            template_node_ids=fields.get("nodes", ()),
        ))

    def _hazard_ref(self) -> str:
        tok = self.peek()
        if tok.kind != "ident":
            raise self.error("expected a name")
        return self.advance().text


def parse_feature_model(source: str) -> FeatureModel:
    """Parse `.fm` source into a validated FeatureModel."""
    return _Parser(source).parse()


def unparse(model: FeatureModel) -> str:
    """Canonical text for a model; parse(unparse(m)) is structurally identical to m."""
    lines = [f"model {model.name}", ""]

    def emit_children(name: str, indent: int) -> list[str]:
        feat = model.features[name]
        pad = "  " * indent
        out: list[str] = []
        if feat.group_kind in (GroupKind.OR, GroupKind.XOR):
            out.append(f"{pad}group {feat.group_kind.value} {{")
            for child in feat.children:
                out.extend(emit_feature(child, indent + 1, flag=None))
            out.append(f"{pad}}}")
        else:
            for child in feat.children:
                out.extend(emit_feature(child, indent, flag=model.features[child].optionality))
        return out

    def emit_feature(name: str, indent: int, flag: Optional[Optionality]) -> list[str]:
        feat = model.features[name]
        pad = "  " * indent
        head = f"{flag.value} {name}" if flag else name
        if feat.is_abstract:
            head += " abstract"
        if not feat.children:
            return [f"{pad}{head} {{}}"]
        body = emit_children(name, indent + 1)
        return [f"{pad}{head} {{", *body, f"{pad}}}"]

    root = model.features[model.root]
    head = f"feature {model.root}"
    if root.is_abstract:
        head += " abstract"
    if root.children:
        lines.append(head + " {")
        lines.extend(emit_children(model.root, 1))
        lines.append("}")
    else:
        lines.append(head + " {}")
    if model.cross_tree_constraints:
        lines.append("")
        for constraint in model.cross_tree_constraints:
            lines.append(f"constraint {to_text(constraint)}")
    for trace in model.hazard_traces:
        lines.append("")
        lines.append(f'hazard {trace.hazard_id} "{trace.description}" {{')
        lines.append(f"  contributes: {', '.join(trace.contributing_features)}")
        if trace.mitigating_features:
            lines.append(f"  mitigates: {', '.join(trace.mitigating_features)}")
        if trace.template_node_ids:
            lines.append(f"  nodes: {', '.join(trace.template_node_ids)}")
        lines.append("}")
    return "\n".join(lines) + "\n"


def configuration_from_doc(doc: dict) -> Configuration:
    """Build a Configuration from its JSON document form."""
    return Configuration(
        selected=frozenset(doc.get("selected", ())),
        deselected=frozenset(doc.get("deselected", ())),
        partial=bool(doc.get("partial", True)),
    )
