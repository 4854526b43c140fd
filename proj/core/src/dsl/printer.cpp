#include "fairb/dsl/printer.hpp"

#include <sstream>

namespace fairb::dsl {

namespace {

// Binding strength; larger binds tighter.
int precedence(Expr::Op op) {
  switch (op) {
    case Expr::Op::Implies: return 1;
    case Expr::Op::Or: return 2;
    case Expr::Op::And: return 3;
    case Expr::Op::Not: return 4;
    case Expr::Op::Eq: case Expr::Op::Ne: case Expr::Op::Lt: case Expr::Op::Le:
    case Expr::Op::Gt: case Expr::Op::Ge: case Expr::Op::In: return 5;
    case Expr::Op::Add: case Expr::Op::Sub: return 6;
    case Expr::Op::Mul: return 7;
    case Expr::Op::Neg: return 8;
    default: return 9;
  }
}

const char* symbol(Expr::Op op) {
  switch (op) {
    case Expr::Op::Implies: return " => ";
    case Expr::Op::Or: return " or ";
    case Expr::Op::And: return " and ";
    case Expr::Op::Eq: return " = ";
    case Expr::Op::Ne: return " != ";
    case Expr::Op::Lt: return " < ";
    case Expr::Op::Le: return " <= ";
    case Expr::Op::Gt: return " > ";
    case Expr::Op::Ge: return " >= ";
    case Expr::Op::Add: return " + ";
    case Expr::Op::Sub: return " - ";
    case Expr::Op::Mul: return " * ";
    default: return " ? ";
  }
}

void emit(std::ostream& os, const Expr& e, int context);

void emit_child(std::ostream& os, const Expr& e, int min_prec) {
  if (precedence(e.op) < min_prec) {
    os << '(';
    emit(os, e, 0);
    os << ')';
  } else {
    emit(os, e, min_prec);
  }
}

void emit(std::ostream& os, const Expr& e, int) {
  const int p = precedence(e.op);
  switch (e.op) {
    case Expr::Op::Int: os << e.value; return;
    case Expr::Op::Bool: os << (e.value ? "true" : "false"); return;
    case Expr::Op::Var: os << e.name; return;
    case Expr::Op::Grd: os << "grd(" << e.name << ')'; return;
    case Expr::Op::Neg:
      os << '-';
      emit_child(os, e.args[0], p);
      return;
    case Expr::Op::Not:
      os << "not ";
      emit_child(os, e.args[0], p);
      return;
    case Expr::Op::In: {
      emit_child(os, e.args[0], p + 1);
      if (e.range) {
        os << " in ";
        emit_child(os, e.args[1], p + 1);
        os << "..";
        emit_child(os, e.args[2], p + 1);
        return;
      }
      os << " in {";
      for (std::size_t i = 1; i < e.args.size(); ++i) {
        if (i > 1) os << ", ";
        emit_child(os, e.args[i], p + 1);
      }
      os << '}';
      return;
    }
    case Expr::Op::Implies:
      // Right associative.
      emit_child(os, e.args[0], p + 1);
      os << symbol(e.op);
      emit_child(os, e.args[1], p);
      return;
    default: {
      const bool comparison = p == 5;
      emit_child(os, e.args[0], comparison ? p + 1 : p);
      os << symbol(e.op);
      emit_child(os, e.args[1], p + 1);
      return;
    }
  }
}

void emit_updates(std::ostream& os, const std::vector<Update>& us, const std::string& indent);

void emit_update(std::ostream& os, const Update& u, const std::string& indent) {
  os << indent;
  switch (u.kind) {
    case Update::Kind::Skip: os << "skip\n"; return;
    case Update::Kind::Assign: os << u.target << " := " << print_expr(u.values[0]) << '\n'; return;
    case Update::Kind::Choose:
      os << u.target << " :: ";
      if (u.range) {
        os << print_expr(u.values[0]) << ".." << print_expr(u.values[1]) << '\n';
        return;
      }
      os << '{';
      for (std::size_t i = 0; i < u.values.size(); ++i) os << (i ? ", " : "") << print_expr(u.values[i]);
      os << "}\n";
      return;
    case Update::Kind::Any:
      os << "any " << u.bound;
      if (u.bound_range) os << " : " << u.bound_range->first << ".." << u.bound_range->second;
      os << " where " << print_expr(*u.where) << " then\n";
      emit_updates(os, u.body, indent + "  ");
      os << indent << "end\n";
      return;
  }
}

void emit_updates(std::ostream& os, const std::vector<Update>& us, const std::string& indent) {
  for (const auto& u : us) emit_update(os, u, indent);
}

void emit_vars(std::ostream& os, const std::vector<VarDecl>& vars) {
  for (const auto& v : vars) os << "  var " << v.name << " : " << v.lo << ".." << v.hi << '\n';
}

void emit_event(std::ostream& os, const EventDecl& e) {
  os << "  event " << e.name;
  if (e.refines) os << " refines " << *e.refines;
  os << " when " << print_expr(e.guard) << " then\n";
  emit_updates(os, e.body, "    ");
  os << "  end\n";
}

void emit_names(std::ostream& os, const std::vector<std::string>& names) {
  os << '{';
  for (std::size_t i = 0; i < names.size(); ++i) os << (i ? ", " : "") << names[i];
  os << '}';
}

struct ItemPrinter {
  std::ostream& os;

  void operator()(const SystemDecl& s) const {
    os << "system " << s.name << '\n';
    emit_vars(os, s.vars);
    for (const auto& inv : s.invariants) os << "  invariant " << print_expr(inv) << '\n';
    for (const auto& e : s.events) emit_event(os, e);
    os << "end\n";
  }

  void operator()(const RefinementDecl& r) const {
    os << "refinement " << r.name << " refines " << r.abstract_name << '\n';
    emit_vars(os, r.vars);
    for (const auto& inv : r.invariants) os << "  invariant " << print_expr(inv) << '\n';
    for (const auto& g : r.gluing) os << "  gluing " << print_expr(g) << '\n';
    for (const auto& e : r.events) emit_event(os, e);
    os << "end\n";
  }

  void operator()(const PropertyDecl& p) const {
    os << "property " << p.name;
    if (p.scope) os << " in " << *p.scope;
    switch (p.kind) {
      case PropertyDecl::Kind::Ensures:
        os << " ensures helpful ";
        emit_names(os, p.helpful);
        break;
      case PropertyDecl::Kind::LeadsTo: os << " leadsto"; break;
      case PropertyDecl::Kind::Unless: os << " unless"; break;
    }
    os << "\n  from " << print_expr(p.from) << "\n  to " << print_expr(p.to) << '\n';
  }

  void operator()(const ProofDecl& p) const {
    os << "proof " << p.name << " goal " << p.goal << '\n';
    for (const auto& s : p.steps) {
      os << "  " << s.name << ": " << s.rule;
      for (std::size_t i = 0; i < s.premises.size(); ++i) os << (i ? ", " : " ") << s.premises[i];
      if (s.from) os << " from " << print_expr(*s.from) << " to " << print_expr(*s.to);
      if (!s.helpful.empty()) {
        os << " helpful ";
        emit_names(os, s.helpful);
      }
      os << '\n';
    }
    os << "end\n";
  }
};

}  // namespace

std::string print_expr(const Expr& e) {
  std::ostringstream os;
  emit(os, e, 0);
  return os.str();
}

std::string print_document(const Document& doc) {
  std::ostringstream os;
  for (std::size_t i = 0; i < doc.items.size(); ++i) {
    if (i) os << '\n';
    std::visit(ItemPrinter{os}, doc.items[i]);
  }
  return os.str();
}

}  // namespace fairb::dsl
