#include "fodb/io.hpp"

#include <fstream>
#include <sstream>

#include "fodb/errors.hpp"
#include "fodb/lexer.hpp"

namespace fodb {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open file '" + path + "'");
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write file '" + path + "'");
  out << content;
}

// ---------------------------------------------------------------------------
// .fodb
// ---------------------------------------------------------------------------

namespace {

std::string expect_name(Lexer& lex, const char* what) {
  Token t = lex.expect(Token::Kind::Ident, what);
  if (is_reserved_word(t.text)) {
    throw ParseError(t.line, t.col, std::string("reserved word '") + t.text + "' cannot name a " + what);
  }
  return t.text;
}

Signature parse_signature_block(Lexer& lex) {
  Signature sig;
  lex.expect_ident("signature");
  lex.expect(Token::Kind::LBrace, "'{'");
  while (!lex.at(Token::Kind::RBrace)) {
    if (lex.at_ident("const")) {
      lex.next();
      sig.add(make_constant(expect_name(lex, "constant")));
      while (lex.at(Token::Kind::Comma)) {
        lex.next();
        sig.add(make_constant(expect_name(lex, "constant")));
      }
    } else if (lex.at_ident("rel")) {
      lex.next();
      auto one = [&] {
        std::string name = expect_name(lex, "relation");
        lex.expect(Token::Kind::Slash, "'/'");
        Token n = lex.expect(Token::Kind::Number, "arity");
        sig.add(make_relation(std::move(name), std::stoi(n.text)));
      };
      one();
      while (lex.at(Token::Kind::Comma)) {
        lex.next();
        one();
      }
    } else {
      lex.fail("expected 'const', 'rel', or '}' in signature block");
    }
  }
  lex.next();
  return sig;
}

std::vector<std::string> parse_domain_block(Lexer& lex) {
  lex.expect_ident("domain");
  lex.expect(Token::Kind::LBrace, "'{'");
  std::vector<std::string> labels;
  labels.push_back(expect_name(lex, "element label"));
  while (lex.at(Token::Kind::Comma)) {
    lex.next();
    labels.push_back(expect_name(lex, "element label"));
  }
  lex.expect(Token::Kind::RBrace, "'}'");
  return labels;
}

std::vector<std::string> parse_tuple_entry(Lexer& lex) {
  // Bare label (a 1-tuple) or a parenthesized label list.
  if (lex.at(Token::Kind::LParen)) {
    lex.next();
    std::vector<std::string> labels;
    labels.push_back(expect_name(lex, "element label"));
    while (lex.at(Token::Kind::Comma)) {
      lex.next();
      labels.push_back(expect_name(lex, "element label"));
    }
    lex.expect(Token::Kind::RParen, "')'");
    return labels;
  }
  return {expect_name(lex, "element label")};
}

}  // namespace

Database parse_database(std::string_view text) {
  Lexer lex(text);
  Signature sig = parse_signature_block(lex);
  std::vector<std::string> domain = parse_domain_block(lex);

  lex.expect_ident("interpret");
  lex.expect(Token::Kind::LBrace, "'{'");
  std::map<std::string, std::string> consts;
  std::map<std::string, std::set<std::vector<std::string>>> rels;
  while (!lex.at(Token::Kind::RBrace)) {
    Token name = lex.expect(Token::Kind::Ident, "symbol name");
    const Symbol* sym = sig.find(name.text);
    if (!sym) {
      throw ParseError(name.line, name.col, "interpretation for undeclared symbol '" + name.text + "'");
    }
    lex.expect(Token::Kind::Eq, "'='");
    if (sym->kind == SymbolKind::Constant) {
      consts[name.text] = expect_name(lex, "element label");
    } else {
      lex.expect(Token::Kind::LBrace, "'{'");
      std::set<std::vector<std::string>> tuples;
      while (!lex.at(Token::Kind::RBrace)) {
        std::vector<std::string> t = parse_tuple_entry(lex);
        if (static_cast<int>(t.size()) != sym->arity) {
          throw ParseError(name.line, name.col, "tuple arity mismatch for relation '" + name.text + "'");
        }
        tuples.insert(std::move(t));
        if (lex.at(Token::Kind::Comma)) lex.next();
      }
      lex.next();
      rels[name.text] = std::move(tuples);
    }
  }
  lex.next();

  lex.expect_ident("theory");
  lex.expect(Token::Kind::LBrace, "'{'");
  std::vector<Formula> sentences;
  while (!lex.at(Token::Kind::RBrace)) {
    std::map<std::string, Symbol> unknowns;
    Formula f = parse_formula_at(lex, sig, unknowns);
    if (!unknowns.empty()) {
      throw ValidationError("theory sentence '" + print_formula(f) + "' uses undeclared symbol '" +
                            unknowns.begin()->first + "'");
    }
    if (!is_sentence(f)) {
      throw ValidationError("theory sentence '" + print_formula(f) + "' has free variables");
    }
    sentences.push_back(std::move(f));
  }
  lex.next();
  if (!lex.at(Token::Kind::End)) lex.fail("unexpected trailing input after theory block");

  Structure a = Structure::make(std::move(sig), std::move(domain), consts, rels);
  return make_database(std::move(a), Theory(std::move(sentences)));
}

Database load_database(const std::string& path) { return parse_database(read_file(path)); }

std::string save_database(const Database& d) {
  const Structure& a = d.structure;
  std::ostringstream out;
  std::vector<std::string> consts, rels;
  for (const Symbol& s : a.sig().symbols()) {
    if (s.kind == SymbolKind::Constant) {
      consts.push_back(s.name);
    } else {
      rels.push_back(s.name + "/" + std::to_string(s.arity));
    }
  }
  auto join = [](const std::vector<std::string>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) s += ", ";
      s += v[i];
    }
    return s;
  };
  out << "signature {";
  if (!consts.empty()) out << " const " << join(consts);
  if (!rels.empty()) out << " rel " << join(rels);
  out << " }\n";
  out << "domain { " << join(a.domain()) << " }\n";
  out << "interpret {\n";
  for (const auto& [name, e] : a.consts()) out << "  " << name << " = " << a.label(e) << "\n";
  for (const auto& [name, tuples] : a.rels()) {
    out << "  " << name << " = {";
    bool first = true;
    for (const Tuple& t : tuples) {
      if (!first) out << ", ";
      first = false;
      if (t.size() == 1) {
        out << a.label(t[0]);
      } else {
        out << '(';
        for (std::size_t i = 0; i < t.size(); ++i) {
          if (i) out << ',';
          out << a.label(t[i]);
        }
        out << ')';
      }
    }
    out << "}\n";
  }
  out << "}\n";
  out << "theory {\n";
  for (const Formula& f : d.theory.sentences()) out << "  " << print_formula(f) << "\n";
  out << "}\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// .ops
// ---------------------------------------------------------------------------

namespace {

ElemRef parse_elem_ref(Lexer& lex, bool allow_fresh) {
  if (lex.at_ident("new")) {
    Token kw = lex.next();
    if (!allow_fresh) {
      throw ParseError(kw.line, kw.col, "'new' elements are only allowed in insertions");
    }
    return ElemRef{true, expect_name(lex, "element label")};
  }
  return ElemRef{false, expect_name(lex, "element label")};
}

std::vector<ElemRef> parse_ref_tuple(Lexer& lex, bool allow_fresh) {
  lex.expect(Token::Kind::LParen, "'('");
  std::vector<ElemRef> refs;
  refs.push_back(parse_elem_ref(lex, allow_fresh));
  while (lex.at(Token::Kind::Comma)) {
    lex.next();
    refs.push_back(parse_elem_ref(lex, allow_fresh));
  }
  lex.expect(Token::Kind::RParen, "')'");
  return refs;
}

}  // namespace

std::vector<OperationDescriptor> parse_ops(std::string_view text) {
  Lexer lex(text);
  std::vector<OperationDescriptor> ops;
  while (!lex.at(Token::Kind::End)) {
    OperationDescriptor op;
    if (lex.at_ident("insert")) {
      lex.next();
      op.kind = OpKind::Insert;
      if (lex.at_ident("const")) {
        lex.next();
        op.payload = OpPayload::ConstBind;
        op.symbol = expect_name(lex, "constant");
        lex.expect(Token::Kind::Eq, "'='");
        op.args.push_back(parse_elem_ref(lex, true));
      } else if (lex.at_ident("rel")) {
        lex.next();
        op.payload = OpPayload::RelTuple;
        op.symbol = expect_name(lex, "relation");
        op.args = parse_ref_tuple(lex, true);
      } else {
        lex.fail("expected 'const' or 'rel' after 'insert'");
      }
    } else if (lex.at_ident("delete")) {
      lex.next();
      op.kind = OpKind::Delete;
      if (lex.at_ident("const")) {
        lex.next();
        op.symbol = expect_name(lex, "constant");
        if (lex.at_ident("reinterpret")) {
          lex.next();
          op.payload = OpPayload::ConstReinterpret;
          op.args.push_back(parse_elem_ref(lex, false));
        } else if (lex.at_ident("drop")) {
          lex.next();
          op.payload = OpPayload::ConstDrop;
        } else {
          lex.fail("expected 'reinterpret' or 'drop'");
        }
      } else if (lex.at_ident("rel")) {
        lex.next();
        op.symbol = expect_name(lex, "relation");
        if (lex.at_ident("tuple")) {
          lex.next();
          op.payload = OpPayload::RelTupleRemove;
          op.args = parse_ref_tuple(lex, false);
        } else if (lex.at_ident("drop")) {
          lex.next();
          op.payload = OpPayload::RelDrop;
        } else {
          lex.fail("expected 'tuple' or 'drop'");
        }
      } else {
        lex.fail("expected 'const' or 'rel' after 'delete'");
      }
    } else {
      lex.fail("expected 'insert' or 'delete'");
    }
    ops.push_back(std::move(op));
  }
  return ops;
}

std::vector<OperationDescriptor> load_ops(const std::string& path) {
  return parse_ops(read_file(path));
}

std::string save_ops(const std::vector<OperationDescriptor>& ops) {
  std::string out;
  for (const OperationDescriptor& op : ops) {
    out += op.to_line();
    out += '\n';
  }
  return out;
}

Update load_ops_script(const std::string& path, const Database& base, OpMode mode) {
  return make_update(base, load_ops(path), mode);
}

// ---------------------------------------------------------------------------
// .ded
// ---------------------------------------------------------------------------

namespace {

std::vector<Formula> parse_formula_block(Lexer& lex, const Signature& sig,
                                         std::map<std::string, Symbol>& unknowns) {
  lex.expect(Token::Kind::LBrace, "'{'");
  std::vector<Formula> out;
  while (!lex.at(Token::Kind::RBrace)) {
    Formula f = parse_formula_at(lex, sig, unknowns);
    if (!is_sentence(f)) {
      throw ValidationError("deduction member '" + print_formula(f) + "' has free variables");
    }
    out.push_back(std::move(f));
  }
  lex.next();
  return out;
}

}  // namespace

Deduction parse_deduction(std::string_view text, const Signature& sig) {
  Lexer lex(text);
  std::map<std::string, Symbol> unknowns;
  lex.expect_ident("premises");
  std::vector<Formula> premises = parse_formula_block(lex, sig, unknowns);
  std::vector<Formula> steps;
  if (lex.at_ident("steps")) {
    lex.next();
    steps = parse_formula_block(lex, sig, unknowns);
  }
  lex.expect_ident("conclusion");
  std::vector<Formula> conclusion = parse_formula_block(lex, sig, unknowns);
  if (conclusion.size() != 1) {
    throw ValidationError("conclusion block must contain exactly one formula");
  }
  if (!lex.at(Token::Kind::End)) lex.fail("unexpected trailing input after conclusion block");
  return Deduction{std::move(premises), std::move(steps), std::move(conclusion.front())};
}

Deduction load_deduction(const std::string& path, const Signature& sig) {
  return parse_deduction(read_file(path), sig);
}

std::string structure_to_interpret_block(const Structure& a) {
  std::ostringstream out;
  out << "domain { ";
  for (std::size_t i = 0; i < a.domain().size(); ++i) {
    if (i) out << ", ";
    out << a.domain()[i];
  }
  out << " }\n";
  out << "interpret {";
  for (const auto& [name, e] : a.consts()) out << ' ' << name << " = " << a.label(e);
  for (const auto& [name, tuples] : a.rels()) {
    out << ' ' << name << " = {";
    bool first = true;
    for (const Tuple& t : tuples) {
      if (!first) out << ", ";
      first = false;
      if (t.size() == 1) {
        out << a.label(t[0]);
      } else {
        out << '(';
        for (std::size_t i = 0; i < t.size(); ++i) {
          if (i) out << ',';
          out << a.label(t[i]);
        }
        out << ')';
      }
    }
    out << '}';
  }
  out << " }";
  return out.str();
}

}  // namespace fodb
