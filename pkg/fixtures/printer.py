"""
Pretty-printer for fixture documents; its output parses back to an equal AST.
"""

from fixtures.nodes import BinOp, CheckDecl, FieldDecl, IdealDecl, MapDecl, Neg, Num, Pow, RingDecl, Var

# Binding strength: sums < products < unary minus < powers < atoms
SUM, PRODUCT, UNARY, POWER, ATOM = range(1, 6)


def _precedence(node):
    if isinstance(node, BinOp):
        return PRODUCT if node.op == "*" else SUM
    if isinstance(node, Neg):
        return UNARY
    if isinstance(node, Pow):
        return POWER
    return ATOM


def format_expression(node, context=SUM):
    if isinstance(node, Num):
        text = str(node.value)
    elif isinstance(node, Var):
        text = node.name
    elif isinstance(node, Neg):
        text = "-" + format_expression(node.operand, UNARY)
    elif isinstance(node, Pow):
        text = f"{format_expression(node.base, ATOM)}^{node.exponent}"
    elif isinstance(node, BinOp):
        own = _precedence(node)
        left = format_expression(node.left, own)
        right = format_expression(node.right, own + 1)
        text = f"{left} * {right}" if node.op == "*" else f"{left} {node.op} {right}"
    else:
        raise TypeError(f"not an expression node: {node!r}")
    if _precedence(node) < context:
        return f"({text})"
    return text


def _list(items):
    return "(" + ", ".join(format_expression(x) for x in items) + ")"


def format_statement(node):
    if isinstance(node, FieldDecl):
        degree = f", {node.k}" if node.k != 1 else ""
        return f"field {node.name}({node.p}{degree});"
    if isinstance(node, RingDecl):
        relations = f" / {_list(node.relations)}" if node.relations else ""
        return f"ring {node.name} = {node.field}[{', '.join(node.variables)}]{relations};"
    if isinstance(node, IdealDecl):
        return f"ideal {node.name} = {_list(node.gens)} in {node.ring};"
    if isinstance(node, MapDecl):
        sends = ", ".join(f"{v} -> {format_expression(e)}" for v, e in node.sends)
        flat = f" flat {node.flat}" if node.flat else ""
        return f"map {node.name} : {node.source} -> {node.target} sends {sends}{flat};"
    if isinstance(node, CheckDecl):
        parts = [f"check {node.kind} {node.target}"]
        if node.sop is not None:
            parts.append(f"with sop {_list(node.sop)}")
        if node.on is not None:
            parts.append(f"on {node.on}")
        for key in ("emax", "tmax", "adjoin", "degree"):
            value = getattr(node, key)
            if value is not None:
                parts.append(f"{key} {value}")
        if node.primes is not None:
            parts.append(f"primes ({', '.join(str(p) for p in node.primes)})")
        return " ".join(parts) + ";"
    raise TypeError(f"not a statement node: {node!r}")


def format_document(document):
    return "\n".join(format_statement(s) for s in document.statements) + "\n"
