// orthgen: generators, verification, decompositions and the identity suite over JSON.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "orthgen/orthgen.hpp"

using namespace orthgen;

namespace {

constexpr int kOk = 0;
constexpr int kFalse = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& file) {
  if (file.empty() || file == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  }
  std::ifstream in(file);
  if (!in) throw UsageError("cannot open '" + file + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json read_json(const std::string& file) { return parse_json_text(read_input(file)); }

void emit(const json& j) { std::cout << j.dump() << "\n"; }

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

FormContext context_for(const Matrix& a) {
  int d = a.dim();
  if (d % 2 == 1) return build_form((d - 1) / 2, a.ring());
  return build_even_form(d / 2, a.ring());
}

FormContext odd_context_for(const Matrix& a) {
  if (a.dim() % 2 == 0 || a.dim() < 3) throw Error(ErrorKind::ParseError, "expected an odd dimension 2n+1 >= 3");
  return build_form((a.dim() - 1) / 2, a.ring());
}

struct GenArgs {
  std::string fam, ring = "Q", z = "0", perm, d0 = "1", d, form = "odd";
  int i = 0, j = 0, n = 0, m = 0;
};

int cmd_gen(const GenArgs& a) {
  Ring r = Ring::parse(a.ring);
  if (a.n < 1) throw UsageError("--n must be positive");
  Family fam = parse_family(a.fam);
  FormContext ctx = build_form(a.n, r, !(fam == Family::OE || a.form == "even"));
  GenLabel g;
  switch (fam) {
    case Family::PERM: {
      std::vector<int> img;
      for (const auto& s : split_list(a.perm)) img.push_back(std::stoi(s));
      g = GenLabel::Perm(img);
      break;
    }
    case Family::DIAG: {
      Vec d;
      for (const auto& s : split_list(a.d)) d.push_back(parse_scalar_literal(s, r));
      g = GenLabel::Diag(parse_scalar_literal(a.d0, r), d);
      break;
    }
    case Family::THETA: g = GenLabel::Theta(a.m); break;
    default: g = GenLabel::F(fam, a.i, a.j, parse_scalar_literal(a.z, r)); break;
  }
  emit(to_json(letter_matrix(g, ctx)));
  return kOk;
}

struct VerifyArgs {
  std::string file, what = "orthogonal", ideal = "maximal";
};

int cmd_verify(const VerifyArgs& a) {
  Matrix m = matrix_from_json(read_json(a.file));
  FormContext ctx = context_for(m);
  bool ok = false;
  std::string detail;
  if (a.what == "orthogonal") {
    ok = is_orthogonal(m, ctx);
    detail = ok ? "alpha^T phi alpha = phi" : "alpha^T phi alpha != phi";
  } else if (a.what == "monomial") {
    ok = is_monomial_orthogonal(m, ctx);
    detail = ok ? "monomial orthogonal" : (is_monomial(m) ? "monomial but not orthogonal" : "not monomial");
  } else if (a.what == "congruent") {
    Ring r = m.ring();
    Ideal I = a.ideal == "zero"     ? Ideal::zero_ideal(r)
              : a.ideal == "maximal" ? Ideal::maximal(r)
              : a.ideal == "xmult"   ? Ideal::x_multiples(r)
              : a.ideal == "extmax"  ? Ideal::extended_maximal(r)
                                     : throw UsageError("unknown ideal '" + a.ideal + "'");
    ok = in_congruence(m, I);
    detail = ok ? "congruent to I modulo the ideal" : "not congruent to I modulo the ideal";
  } else {
    throw UsageError("unknown --what '" + a.what + "'");
  }
  emit(json{{"ok", ok}, {"detail", detail}});
  return ok ? kOk : kFalse;
}

struct DecomposeArgs {
  std::string file, mode = "tmt";
  bool lower = false, check = false;
};

int cmd_decompose(const DecomposeArgs& a) {
  Matrix m = matrix_from_json(read_json(a.file));
  bool upper = !a.lower;
  auto verify = [&](bool ok) {
    if (a.check && !ok) throw Error(ErrorKind::EliminationStalled, "recomposition check failed");
  };
  if (a.mode == "tmt") {
    FormContext ctx = odd_context_for(m);
    TmtDecomposition t = tmt_decompose(m, ctx);
    verify(eval_word(t.tau1) * t.mu * eval_word(t.tau2) == m);
    emit(to_json(t));
  } else if (a.mode == "local") {
    FormContext ctx = odd_context_for(m);
    LocalDecomposition t = local_decompose(m, ctx);
    verify(eval_word(t.tau1) * t.mu * eval_word(t.tau2) * t.residual == m &&
           in_congruence(t.residual, Ideal::maximal(m.ring())));
    emit(to_json(t));
  } else if (a.mode == "to") {
    FormContext ctx = odd_context_for(m);
    Word w = factor_to(m, ctx, upper);
    verify(eval_word(w) == m);
    emit(to_json(w));
  } else if (a.mode == "alt") {
    FormContext ctx = build_form(m.dim(), m.ring());
    Word w = factor_alt(m, upper, ctx);
    verify(eval_word(w) == to_block(Matrix::identity(m.ring(), m.dim()), m, upper));
    emit(to_json(w));
  } else if (a.mode == "unipotent") {
    FormContext ctx = build_form(m.dim(), m.ring());
    Word w = factor_unipotent(m, upper, ctx);
    verify(eval_word(w) == to_block(m, Matrix(m.ring(), m.dim()), upper));
    emit(to_json(w));
  } else {
    throw UsageError("unknown --mode '" + a.mode + "'");
  }
  return kOk;
}

struct FactorArgs {
  std::string file, mode = "split3";
};

int cmd_factor(const FactorArgs& a) {
  json in = read_json(a.file);
  if (a.mode == "split3") {
    TransvectionSpec s = transvection_from_json(in);
    FormContext ctx = build_form(static_cast<int>(s.v.vp.size()), s.x.ring());
    Split3 f = transvection_split3(s, ctx);
    emit(json{{"m1", to_json(f.m1)}, {"m2", to_json(f.m2)}, {"m3", to_json(f.m3)}});
  } else if (a.mode == "mono") {
    Matrix m = matrix_from_json(in);
    MonoSplit s = mo_split(m, odd_context_for(m));
    emit(json{{"perm", s.perm}, {"d0", to_json(s.d0)}, {"d", vec_to_json(s.d)}});
  } else if (a.mode == "eval") {
    emit(to_json(eval_word(word_from_json(in))));
  } else {
    throw UsageError("unknown --mode '" + a.mode + "'");
  }
  return kOk;
}

struct IdentityArgs {
  bool all = false, timing = false, serial = false;
  std::vector<std::string> items;
  std::uint64_t seed = 42;
  std::size_t samples = 100;
};

int cmd_identities(const IdentityArgs& a) {
  std::vector<std::string> sel;
  for (const auto& s : a.items)
    for (const auto& t : split_list(s)) sel.push_back(t);
  if (a.all) sel = {"all"};
  if (sel.empty()) throw UsageError("pass --all or --items");
  SuiteOptions opt;
  opt.parallel = !a.serial;
  opt.timing = a.timing;
  SuiteReport rep = run_suite(sel, a.seed, a.samples, opt);
  emit(to_json(rep, a.timing));
  return rep.failure_count() == 0 ? kOk : kFalse;
}

int cmd_horrocks(const std::string& file) {
  HorrocksVerdict v = check_horrocks_instance(horrocks_from_json(read_json(file)));
  emit(to_json(v));
  return v.accept ? kOk : kFalse;
}

std::uint64_t default_seed() {
  if (const char* s = std::getenv("ORTHGEN_SEED")) {
    try {
      return std::stoull(s);
    } catch (...) {
    }
  }
  return 42;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"orthgen: exact odd orthogonal group calculus"};
  app.require_subcommand(1);

  GenArgs ga;
  auto* gen = app.add_subcommand("gen", "print a generator matrix");
  gen->add_option("--fam", ga.fam, "F1..F5, OE, PERM, DIAG, THETA")->required();
  gen->add_option("--i", ga.i);
  gen->add_option("--j", ga.j);
  gen->add_option("--z", ga.z, "scalar literal or JSON")->allow_extra_args(false);
  gen->add_option("--n", ga.n, "hyperbolic rank")->required();
  gen->add_option("--ring", ga.ring);
  gen->add_option("--perm", ga.perm, "comma separated image");
  gen->add_option("--d0", ga.d0);
  gen->add_option("--d", ga.d, "comma separated units");
  gen->add_option("--m", ga.m, "theta block size");
  gen->add_option("--form", ga.form, "odd or even")->check(CLI::IsMember({"odd", "even"}));

  VerifyArgs va;
  auto* ver = app.add_subcommand("verify", "check a matrix predicate");
  ver->add_option("--file", va.file);
  ver->add_option("--what", va.what)->check(CLI::IsMember({"orthogonal", "monomial", "congruent"}));
  ver->add_option("--ideal", va.ideal)->check(CLI::IsMember({"zero", "maximal", "xmult", "extmax"}));

  DecomposeArgs da;
  auto* dec = app.add_subcommand("decompose", "factor a matrix");
  dec->add_option("--file", da.file);
  dec->add_option("--mode", da.mode)->check(CLI::IsMember({"tmt", "local", "to", "alt", "unipotent"}));
  dec->add_flag("--lower", da.lower);
  dec->add_flag("--check", da.check);

  FactorArgs fa;
  auto* fac = app.add_subcommand("factor", "three-factor split, monomial split, or word evaluation");
  fac->add_option("--file", fa.file);
  fac->add_option("--mode", fa.mode)->check(CLI::IsMember({"split3", "mono", "eval"}));

  IdentityArgs ia;
  ia.seed = default_seed();
  auto* ids = app.add_subcommand("identities", "run the identity suite");
  ids->add_flag("--all", ia.all);
  ids->add_option("--items", ia.items, "comma separated ids");
  ids->add_option("--seed", ia.seed);
  ids->add_option("--samples", ia.samples);
  ids->add_flag("--timing", ia.timing);
  ids->add_flag("--serial", ia.serial);

  std::string hfile;
  auto* hor = app.add_subcommand("check-horrocks", "check a Horrocks certificate");
  hor->add_option("--file", hfile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  bool is_gen = gen->parsed();
  try {
    if (is_gen) return cmd_gen(ga);
    if (ver->parsed()) return cmd_verify(va);
    if (dec->parsed()) return cmd_decompose(da);
    if (fac->parsed()) return cmd_factor(fa);
    if (ids->parsed()) return cmd_identities(ia);
    if (hor->parsed()) return cmd_horrocks(hfile);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    bool usage = is_gen || e.kind() == ErrorKind::ParseError || e.kind() == ErrorKind::UnknownItem;
    return usage ? kUsage : kFalse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
