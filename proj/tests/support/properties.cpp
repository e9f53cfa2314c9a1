#include "properties.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "symcert/oracle.hpp"
#include "symcert/parser.hpp"
#include "symcert/solver.hpp"
#include "symcert/word.hpp"

namespace symcert::testing {

Formula random_formula(FormulaStore& store, std::mt19937_64& rng, std::uint32_t num_vars, int depth) {
  while (store.var_count() < num_vars) store.fresh_var();
  std::uniform_int_distribution<int> leaf_pick(0, 9);
  std::uniform_int_distribution<std::uint32_t> var_pick(1, num_vars);
  if (depth <= 0 || leaf_pick(rng) < 2) {
    if (leaf_pick(rng) == 0) return store.constant(rng() & 1U);
    return store.var(var_pick(rng));
  }
  std::uniform_int_distribution<int> op_pick(0, 4);
  switch (op_pick(rng)) {
    case 0: return store.mk_not(random_formula(store, rng, num_vars, depth - 1));
    case 1: {
      const Formula a = random_formula(store, rng, num_vars, depth - 1);
      return store.mk_and(a, random_formula(store, rng, num_vars, depth - 1));
    }
    case 2: {
      const Formula a = random_formula(store, rng, num_vars, depth - 1);
      return store.mk_or(a, random_formula(store, rng, num_vars, depth - 1));
    }
    case 3: {
      const Formula a = random_formula(store, rng, num_vars, depth - 1);
      return store.mk_xor(a, random_formula(store, rng, num_vars, depth - 1));
    }
    default: {
      const Formula c = random_formula(store, rng, num_vars, depth - 1);
      const Formula t = random_formula(store, rng, num_vars, depth - 1);
      return store.mk_ite(c, t, random_formula(store, rng, num_vars, depth - 1));
    }
  }
}

Cnf random_cnf(std::mt19937_64& rng, int num_vars, int num_clauses, int max_len) {
  Cnf cnf;
  cnf.num_vars = num_vars;
  std::uniform_int_distribution<int> len_pick(0, max_len);
  std::uniform_int_distribution<int> var_pick(1, num_vars);
  for (int c = 0; c < num_clauses; ++c) {
    std::vector<int> clause;
    // short clauses are rare but keep empty and unit clauses in the mix
    const int len = std::max(len_pick(rng), static_cast<int>(rng() % 16 == 0 ? 0 : 1));
    for (int i = 0; i < len; ++i) clause.push_back(rng() & 1U ? var_pick(rng) : -var_pick(rng));
    cnf.clauses.push_back(std::move(clause));
  }
  return cnf;
}

Assignment assignment_from_bits(std::uint32_t num_vars, std::uint64_t bits) {
  Assignment a(num_vars);
  for (std::uint32_t v = 1; v <= num_vars; ++v) a.set(v, (bits >> (v - 1)) & 1U);
  return a;
}

std::uint64_t count_models(const FormulaStore& store, Formula f, std::uint32_t num_vars) {
  std::uint64_t count = 0;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << num_vars); ++bits) {
    count += eval(store, f, assignment_from_bits(num_vars, bits));
  }
  return count;
}

std::uint64_t count_models(const Cnf& cnf) {
  std::uint64_t count = 0;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << cnf.num_vars); ++bits) {
    count += satisfies(cnf, assignment_from_bits(static_cast<std::uint32_t>(cnf.num_vars), bits));
  }
  return count;
}

std::uint64_t count_projected_models(const Cnf& cnf, const std::vector<int>& projection) {
  std::vector<std::uint64_t> seen;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << cnf.num_vars); ++bits) {
    if (!satisfies(cnf, assignment_from_bits(static_cast<std::uint32_t>(cnf.num_vars), bits))) continue;
    std::uint64_t key = 0;
    for (std::size_t i = 0; i < projection.size(); ++i) {
      key |= ((bits >> (projection[i] - 1)) & 1U) << i;
    }
    seen.push_back(key);
  }
  std::sort(seen.begin(), seen.end());
  return static_cast<std::uint64_t>(std::unique(seen.begin(), seen.end()) - seen.begin());
}

namespace {

using WordOp = std::function<SymWord(WordBuilder&, const SymWord&, const SymWord&)>;
using IntOp = std::function<std::uint64_t(std::uint64_t, std::uint64_t, unsigned)>;

struct NamedOp {
  std::string name;
  WordOp word;
  IntOp integer;
};

SymWord from_formula(Formula f) { return SymWord{{f}}; }

std::vector<NamedOp> word_ops() {
  std::vector<NamedOp> ops = {
      {"add", [](WordBuilder& w, const SymWord& a, const SymWord& b) { return w.add(a, b); },
       [](std::uint64_t a, std::uint64_t b, unsigned) { return a + b; }},
      {"sub", [](WordBuilder& w, const SymWord& a, const SymWord& b) { return w.sub(a, b); },
       [](std::uint64_t a, std::uint64_t b, unsigned) { return a - b; }},
      {"mul", [](WordBuilder& w, const SymWord& a, const SymWord& b) { return w.mul(a, b); },
       [](std::uint64_t a, std::uint64_t b, unsigned) { return a * b; }},
      {"and", [](WordBuilder& w, const SymWord& a, const SymWord& b) { return w.bit_and(a, b); },
       [](std::uint64_t a, std::uint64_t b, unsigned) { return a & b; }},
      {"or", [](WordBuilder& w, const SymWord& a, const SymWord& b) { return w.bit_or(a, b); },
       [](std::uint64_t a, std::uint64_t b, unsigned) { return a | b; }},
      {"xor", [](WordBuilder& w, const SymWord& a, const SymWord& b) { return w.bit_xor(a, b); },
       [](std::uint64_t a, std::uint64_t b, unsigned) { return a ^ b; }},
      {"not", [](WordBuilder& w, const SymWord& a, const SymWord&) { return w.bit_not(a); },
       [](std::uint64_t a, std::uint64_t, unsigned) { return ~a; }},
      {"neg", [](WordBuilder& w, const SymWord& a, const SymWord&) { return w.neg(a); },
       [](std::uint64_t a, std::uint64_t, unsigned) { return std::uint64_t{0} - a; }},
  };
  const std::pair<CmpOp, std::string> cmps[] = {{CmpOp::Eq, "=="}, {CmpOp::Ne, "!="}, {CmpOp::Lt, "<"},
                                                {CmpOp::Le, "<="}, {CmpOp::Gt, ">"}, {CmpOp::Ge, ">="}};
  for (const auto& [op, name] : cmps) {
    ops.push_back({name, [op](WordBuilder& w, const SymWord& a, const SymWord& b) { return from_formula(w.cmp(op, a, b)); },
                   [op](std::uint64_t a, std::uint64_t b, unsigned) -> std::uint64_t {
                     switch (op) {
                       case CmpOp::Eq: return a == b;
                       case CmpOp::Ne: return a != b;
                       case CmpOp::Lt: return a < b;
                       case CmpOp::Le: return a <= b;
                       case CmpOp::Gt: return a > b;
                       case CmpOp::Ge: return a >= b;
                     }
                     return 0;
                   }});
  }
  // ite on the lowest bit of b as condition
  ops.push_back({"ite", [](WordBuilder& w, const SymWord& a, const SymWord& b) { return w.ite(b.bits[0], a, w.bit_not(a)); },
                 [](std::uint64_t a, std::uint64_t b, unsigned) { return (b & 1U) ? a : ~a; }});
  return ops;
}

std::uint64_t expected_shift(std::uint64_t a, std::uint64_t amount, bool left) {
  if (amount >= 64) return 0;
  return left ? a << amount : a >> amount;
}

}  // namespace

PropertyResult check_word_ops(unsigned max_width) {
  PropertyResult result;
  const auto ops = word_ops();
  for (unsigned w = 1; w <= max_width; ++w) {
    const std::uint64_t mask = width_mask(w);
    const std::uint64_t n = std::uint64_t{1} << w;
    for (const auto& op : ops) {
      const unsigned out_width = op.name == "==" || op.name == "!=" || op.name[0] == '<' || op.name[0] == '>' ? 1 : w;
      const std::uint64_t out_mask = width_mask(out_width);
      // ground operands
      FormulaStore store;
      WordBuilder words(store);
      for (std::uint64_t a = 0; a < n; ++a) {
        for (std::uint64_t b = 0; b < n; ++b) {
          const SymWord r = op.word(words, words.constant(a, w), words.constant(b, w));
          const auto got = words.ground_value(r);
          const std::uint64_t want = op.integer(a, b, w) & out_mask;
          ++result.checked;
          if (!got || *got != want) {
            std::ostringstream msg;
            msg << "ground " << op.name << " w=" << w << " a=" << a << " b=" << b << ": want " << want << " got "
                << (got ? std::to_string(*got) : "symbolic");
            return {false, result.checked, msg.str()};
          }
        }
      }
      // symbolic operands, every valuation
      FormulaStore sym_store;
      WordBuilder sym(sym_store);
      const SymWord a = sym.fresh(w);
      const SymWord b = sym.fresh(w);
      const SymWord r = op.word(sym, a, b);
      for (std::uint64_t bits = 0; bits < n * n; ++bits) {
        const Assignment asg = assignment_from_bits(2 * w, bits);
        Evaluator ev(sym_store, asg);
        const std::uint64_t va = eval_word(ev, a);
        const std::uint64_t vb = eval_word(ev, b);
        const std::uint64_t got = eval_word(ev, r);
        const std::uint64_t want = op.integer(va, vb, w) & out_mask;
        ++result.checked;
        if (got != want) {
          std::ostringstream msg;
          msg << "symbolic " << op.name << " w=" << w << " a=" << va << " b=" << vb << ": want " << want << " got " << got;
          return {false, result.checked, msg.str()};
        }
      }
    }
    // shifts take ground amounts
    for (std::uint64_t amount = 0; amount <= w + 1; ++amount) {
      FormulaStore sym_store;
      WordBuilder sym(sym_store);
      const SymWord a = sym.fresh(w);
      const SymWord left = sym.shl(a, amount);
      const SymWord right = sym.shr(a, amount);
      for (std::uint64_t bits = 0; bits < n; ++bits) {
        const Assignment asg = assignment_from_bits(w, bits);
        Evaluator ev(sym_store, asg);
        const std::uint64_t va = eval_word(ev, a);
        result.checked += 2;
        if (eval_word(ev, left) != (expected_shift(va, amount, true) & mask) ||
            eval_word(ev, right) != (expected_shift(va, amount, false) & mask)) {
          return {false, result.checked,
                  "shift w=" + std::to_string(w) + " a=" + std::to_string(va) + " by " + std::to_string(amount)};
        }
      }
    }
  }
  return result;
}

PropertyResult check_word_ops_random(unsigned width, int valuations, std::uint64_t seed) {
  PropertyResult result;
  std::mt19937_64 rng(seed);
  const std::uint64_t mask = width_mask(width);
  for (const auto& op : word_ops()) {
    for (int shape = 0; shape < 4; ++shape) {
      FormulaStore store;
      WordBuilder words(store);
      // 0: ground/ground is covered elsewhere; here mix symbolic, ground and partly constant operands
      auto make = [&](bool symbolic) {
        if (!symbolic) return words.constant(rng() & mask, width);
        SymWord w = words.fresh(width);
        for (auto& bit : w.bits) {
          const auto pick = rng() % 4;
          if (pick == 0) bit = store.constant(rng() & 1U);
          if (pick == 1) bit = store.mk_xor(bit, store.var(1));
        }
        return w;
      };
      const SymWord a = make(shape != 1);
      const SymWord b = make(shape != 2);
      const SymWord r = op.word(words, a, b);
      const std::uint32_t vars = store.var_count();
      const bool is_cmp = r.width() == 1 && width != 1;
      for (int i = 0; i < valuations; ++i) {
        const Assignment asg = assignment_from_bits(vars, rng());
        Evaluator ev(store, asg);
        const std::uint64_t va = eval_word(ev, a);
        const std::uint64_t vb = eval_word(ev, b);
        const std::uint64_t want = op.integer(va, vb, width) & (is_cmp ? 1U : mask);
        ++result.checked;
        if (eval_word(ev, r) != want) {
          return {false, result.checked, "mixed " + op.name + " a=" + std::to_string(va) + " b=" + std::to_string(vb)};
        }
      }
    }
  }
  return result;
}

PropertyResult check_tseitin(int formulas, std::uint32_t max_vars, bool polarity, std::uint64_t seed) {
  PropertyResult result;
  std::mt19937_64 rng(seed);
  for (int i = 0; i < formulas; ++i) {
    FormulaStore store;
    const std::uint32_t nv = 1 + static_cast<std::uint32_t>(rng() % max_vars);
    const Formula f = random_formula(store, rng, nv, 2 + static_cast<int>(rng() % 5));
    const bool truth_sat = count_models(store, f, nv) > 0;
    TseitinOptions options;
    options.polarity = polarity;
    const Cnf cnf = tseitin(store, f, options);
    const SolveOutcome out = solve(cnf);
    ++result.checked;
    if ((out.status == SatStatus::Sat) != truth_sat) {
      return {false, result.checked, "formula " + std::to_string(i) + ": truth table says " + (truth_sat ? "sat" : "unsat")};
    }
    if (out.status == SatStatus::Sat) {
      Assignment restricted(nv);
      for (std::uint32_t v = 1; v <= nv; ++v) restricted.set(v, out.model.get(v).value_or(false));
      if (!eval(store, f, restricted)) {
        return {false, result.checked, "formula " + std::to_string(i) + ": CNF model does not satisfy the formula"};
      }
    }
  }
  return result;
}

PropertyResult check_solver(int instances, int max_vars, int max_clauses, std::uint64_t seed) {
  PropertyResult result;
  std::mt19937_64 rng(seed);
  for (int i = 0; i < instances; ++i) {
    const int nv = 1 + static_cast<int>(rng() % max_vars);
    const int nc = static_cast<int>(rng() % (max_clauses + 1));
    const Cnf cnf = random_cnf(rng, nv, nc, 4);
    const bool brute = count_models(cnf) > 0;
    const SolveOutcome out = solve(cnf);
    ++result.checked;
    if ((out.status == SatStatus::Sat) != brute) {
      return {false, result.checked, "instance " + std::to_string(i) + ":\n" + write_dimacs(cnf)};
    }
  }
  return result;
}

namespace {

std::vector<GroundValue> ground_prints(std::string_view source, unsigned width) {
  PipelineOptions options;
  options.width = width;
  options.mode = Mode::DimacsOnly;
  std::vector<GroundValue> values;
  for (const auto& p : run_pipeline(source, options).prints) values.push_back(p.value);
  return values;
}

std::uint64_t nat(const GroundValue& v) { return std::get<Natural>(v).value; }

}  // namespace

std::uint64_t measured_t_clauses(const CorpusCase& c, std::uint64_t k, std::uint64_t n) {
  std::string source = "nN_SAT = " + std::to_string(n) + ";\nnClauses_SAT = 1;\n";
  for (std::uint64_t j = 0; j < 2 * n; ++j) {
    source += "bC_SAT[0][" + std::to_string(j) + "] = " + (j < k ? "true" : "false") + ";\n";
  }
  source += c.fragment("reduction.urs");
  source += "\nfor(ni=0; ni<nClauses_3SAT; ni++) { print nC_3SAT[ni][0]; print nC_3SAT[ni][1]; print nC_3SAT[ni][2]; }\n";
  const auto values = ground_prints(source, 16);
  std::uint64_t produced = 0;
  for (std::size_t i = 0; i + 2 < values.size(); i += 3) {
    if (nat(values[i]) != 0 || nat(values[i + 1]) != 1 || nat(values[i + 2]) != 1) ++produced;
  }
  return produced;
}

std::pair<std::uint64_t, std::uint64_t> measured_sat3_size(const CorpusCase& c, std::uint64_t n,
                                                           std::uint64_t clauses) {
  std::string source = "nN_SAT = " + std::to_string(n) + ";\nnClauses_SAT = " + std::to_string(clauses) + ";\n";
  for (std::uint64_t i = 0; i < clauses; ++i) {
    for (std::uint64_t j = 0; j < 2 * n; ++j) {
      source += "bC_SAT[" + std::to_string(i) + "][" + std::to_string(j) + "] = false;\n";
    }
  }
  source += c.fragment("reduction.urs");
  source += "\nprint nClauses_3SAT;\nprint nN_3SAT;\n";
  const auto values = ground_prints(source, 16);
  return {nat(values.at(0)), nat(values.at(1))};
}

namespace {

bool colour_from(const std::vector<std::vector<bool>>& adj, std::vector<int>& colour, std::size_t v) {
  if (v == adj.size()) return true;
  for (int c = 0; c < 3; ++c) {
    bool clash = false;
    for (std::size_t u = 0; u < v && !clash; ++u) clash = adj[u][v] && colour[u] == c;
    if (clash) continue;
    colour[v] = c;
    if (colour_from(adj, colour, v + 1)) return true;
  }
  return false;
}

}  // namespace

PropertyResult check_3col_reduction_sampled(const CorpusCase& c, int n, int clauses, int samples,
                                            std::uint64_t seed) {
  PropertyResult result;
  std::mt19937_64 rng(seed);
  for (int s = 0; s < samples; ++s) {
    std::vector<std::array<int, 3>> formula(clauses);
    std::string source = "nN_3SAT = " + std::to_string(n) + ";\nnClauses = " + std::to_string(clauses) + ";\n";
    for (int i = 0; i < clauses; ++i) {
      for (int j = 0; j < 3; ++j) {
        formula[i][j] = static_cast<int>(rng() % (2 * n));
        source += "nC[" + std::to_string(i) + "][" + std::to_string(j) + "] = " + std::to_string(formula[i][j]) + ";\n";
      }
    }
    source += c.fragment("reduction.urs");
    source += "\nprint nNodesColouring;\n"
              "for(ni=0; ni<nNodesColouring; ni++) { for(nj=ni+1; nj<nNodesColouring; nj++) { print bE_colouring[ni][nj]; } }\n";
    const auto values = ground_prints(source, 8);
    const std::size_t nodes = nat(values.at(0));
    std::vector<std::vector<bool>> adj(nodes, std::vector<bool>(nodes, false));
    std::size_t at = 1;
    for (std::size_t i = 0; i < nodes; ++i) {
      for (std::size_t j = i + 1; j < nodes; ++j) {
        adj[i][j] = adj[j][i] = std::get<bool>(values.at(at++));
      }
    }

    bool satisfiable = false;
    for (std::uint32_t bits = 0; bits < (1U << n) && !satisfiable; ++bits) {
      bool all = true;
      for (const auto& clause : formula) {
        bool any = false;
        for (int lit : clause) any = any || (((bits >> (lit / 2)) & 1U) != static_cast<unsigned>(lit % 2));
        all = all && any;
      }
      satisfiable = all;
    }
    std::vector<int> colour(nodes, -1);
    const bool colourable = colour_from(adj, colour, 0);
    ++result.checked;
    if (satisfiable != colourable) {
      std::ostringstream msg;
      msg << "sample " << s << ": formula " << (satisfiable ? "satisfiable" : "unsatisfiable") << ", graph "
          << (colourable ? "3-colourable" : "not 3-colourable");
      return {false, result.checked, msg.str()};
    }
  }
  return result;
}

std::vector<std::string> assertion_conjuncts(std::string_view assertion_source) {
  const Program p = parse_source(assertion_source);
  if (p.statements.size() != 1 || p.statements[0].kind != Stmt::Kind::Assert) {
    throw std::invalid_argument("expected a single assert statement");
  }
  std::vector<std::string> out;
  std::function<void(const Expr&)> walk = [&](const Expr& e) {
    if (e.kind == Expr::Kind::Binary && e.binary_op == BinaryOp::And) {
      walk(e.operands[0]);
      walk(e.operands[1]);
    } else {
      out.push_back(to_source(e));
    }
  };
  walk(p.statements[0].value);
  return out;
}

const CorpusCase& find_case(const std::vector<CorpusCase>& corpus, const std::string& id) {
  for (const auto& c : corpus) {
    if (c.id == id) return c;
  }
  throw std::runtime_error("corpus case '" + id + "' not found");
}

PropertyResult check_pipeline_vs_oracle(const std::vector<CorpusCase>& corpus, int n) {
  const std::vector<const CorpusCase*> programs = {&find_case(corpus, "clique-solve"),
                                                   &find_case(corpus, "clique-to-cover")};
  const OracleReport report = oracle_reduction_equisat(n, programs);
  return {report.passed, report.checked, report.failure};
}

PropertyResult check_mutated_reduction(const CorpusCase& c, int nv, int k) {
  const std::string original = "bE_vertexCover[ni][nj] = !bE_clique[ni][nj];";
  std::string source =
      compose_verification(c, {{"nV", static_cast<std::uint64_t>(nv)}, {"nK_clique", static_cast<std::uint64_t>(k)}},
                           generated_assertion(*c.verification, AssertionKind::Full));
  const auto at = source.find(original);
  if (at == std::string::npos) return {false, 0, "reduction line not found"};
  source.replace(at, original.size(), "bE_vertexCover[ni][nj] = bE_clique[ni][nj];");

  PipelineOptions options;
  options.width = c.run_width;
  const VerificationOutcome out = verify_source(c, source, options);
  if (out.status != SatStatus::Sat || !out.counterexample) return {false, 1, "mutated reduction was not refuted"};

  // decode the witness straight from the model
  Graph g(nv);
  std::uint32_t clique = 0;
  std::uint32_t cover = 0;
  for (const Unknown& u : out.pipeline.registry) {
    const bool value = out.counterexample->model.get(u.bits.at(0)).value_or(false);
    if (u.name == "bE_clique") g.set_edge(static_cast<int>(u.indices[0]), static_cast<int>(u.indices[1]), value);
    if (u.name == "bBelongsClique" && value) clique |= 1U << u.indices[0];
    if (u.name == "bBelongsVertexCover" && value) cover |= 1U << u.indices[0];
  }
  const std::uint32_t all = (1U << nv) - 1;
  const bool link = cover == (~clique & all);
  const bool clique_ok = is_clique(g, clique) && std::popcount(clique) >= k;
  // the mutated reduction hands g itself to the cover check
  const bool cover_ok = is_vertex_cover(g, cover) && std::popcount(cover) <= nv - k;
  if (!link || clique_ok == cover_ok) {
    return {false, 1, "decoded counterexample does not break the reduction"};
  }
  return {true, 1, {}};
}

}  // namespace symcert::testing
