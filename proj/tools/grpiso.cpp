#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "grpiso/acceptance.hpp"
#include "grpiso/io.hpp"
#include "grpiso/iso.hpp"
#include "grpiso/qsim.hpp"

using namespace grpiso;

namespace {

// Stable exit-code contract: 0 success, 1 negative verdict, 2 input error,
// 3 internal failure.
constexpr int kOk = 0, kNegative = 1, kInputError = 2, kInternal = 3;

u64 max_group_order() {
  if (const char* env = std::getenv("GRPISO_MAX_GROUP_ORDER")) {
    char* end = nullptr;
    u64 v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
    throw std::invalid_argument("GRPISO_MAX_GROUP_ORDER is not a positive integer");
  }
  return 100000;
}

std::shared_ptr<ClassSGroup> load_group(const std::string& path) {
  auto g = build_group(read_spec_file(path));
  if (g->order() > max_group_order())
    throw std::invalid_argument(path + ": group order " +
                                std::to_string(g->order()) +
                                " exceeds GRPISO_MAX_GROUP_ORDER");
  return g;
}

std::string enc_to_text(const Elem& e) {
  bool printable = true;
  for (unsigned char c : e)
    if (!std::isalnum(c)) printable = false;
  if (printable) return e;
  std::ostringstream out;
  out << "0x" << std::hex << std::setfill('0');
  for (unsigned char c : e) out << std::setw(2) << static_cast<unsigned>(c);
  return out.str();
}

// ---------------------------------------------------------------------------
// gen: random class-S specs with seeded order-dividing-m action search

std::vector<u64> parse_orders(const std::string& text) {
  std::vector<u64> orders;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    u64 v = std::stoull(tok);
    if (v < 2) throw std::invalid_argument("abelian factor orders must be >= 2");
    orders.push_back(v);
  }
  if (orders.empty()) throw std::invalid_argument("empty abelian order list");
  return orders;
}

ZMat act_mul(const ZMat& a, const ZMat& b, const std::vector<u64>& orders) {
  std::size_t s = orders.size();
  ZMat c(s, std::vector<i64>(s, 0));
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < s; ++j) {
      i64 acc = 0;
      for (std::size_t k = 0; k < s; ++k)
        acc = (acc + a[i][k] * b[k][j]) % static_cast<i64>(orders[i]);
      c[i][j] = acc;
    }
  return c;
}

bool act_is_identity(const ZMat& a, const std::vector<u64>& orders) {
  for (std::size_t i = 0; i < orders.size(); ++i)
    for (std::size_t j = 0; j < orders.size(); ++j)
      if (a[i][j] % static_cast<i64>(orders[i]) !=
          static_cast<i64>(i == j ? 1 % orders[i] : 0))
        return false;
  return true;
}

ZMat random_action(const std::vector<u64>& orders, u64 m, std::mt19937_64& rng) {
  std::size_t s = orders.size();
  while (true) {
    // random well-defined endomorphism: entry (i,j) a multiple of
    // n_i / gcd(n_i, n_j)
    ZMat t(s, std::vector<i64>(s, 0));
    for (std::size_t i = 0; i < s; ++i)
      for (std::size_t j = 0; j < s; ++j) {
        u64 step = orders[i] / std::gcd(orders[i], orders[j]);
        t[i][j] = static_cast<i64>(step * (rng() % (orders[i] / step)));
      }
    // automorphism iff some power returns to the identity
    u64 ord = 0;
    ZMat cur = t;
    for (u64 e = 1; e <= 10000; ++e) {
      if (act_is_identity(cur, orders)) {
        ord = e;
        break;
      }
      cur = act_mul(cur, t, orders);
    }
    if (ord == 0) continue;
    // drop to order dividing m
    u64 drop = ord / std::gcd(ord, m);
    ZMat out = zmat_identity(s);
    for (std::size_t i = 0; i < s; ++i)
      out[i][i] = static_cast<i64>(1 % orders[i]);
    for (u64 e = 0; e < drop; ++e) out = act_mul(out, t, orders);
    return out;
  }
}

int cmd_gen(const std::string& abelian, u64 m, unsigned count,
            const std::string& out_dir, const std::string& prefix, u64 seed) {
  auto orders = parse_orders(abelian);
  u64 asize = 1;
  for (u64 n : orders) asize *= n;
  if (std::gcd(asize, m) != 1)
    throw std::invalid_argument("|A| = " + std::to_string(asize) +
                                " and m = " + std::to_string(m) +
                                " are not coprime");
  std::mt19937_64 rng(seed);
  for (unsigned i = 0; i < count; ++i) {
    ClassSGroupSpec spec;
    spec.abelian_orders = orders;
    spec.m = m;
    spec.action = random_action(orders, m, rng);
    spec.scramble_seed = rng();
    spec.validate();
    std::ostringstream name;
    name << out_dir << "/" << prefix << std::setw(3) << std::setfill('0') << i
         << ".spec";
    write_spec_file(name.str(), spec);
    std::cout << name.str() << "\n";
  }
  return kOk;
}

// ---------------------------------------------------------------------------

int cmd_decompose(const std::string& path) {
  auto g = load_group(path);
  auto sd = standard_decompose(*g);
  bool ok = verify_standard_decomposition(*g, sd);
  auto basis = abelian_basis(sd.a_gens, *g);
  u64 asize = 1;
  for (u64 o : basis.orders) asize *= o;
  std::cout << "|A| = " << asize << "\n";
  std::cout << "basis orders =";
  for (u64 o : basis.orders) std::cout << " " << o;
  std::cout << "\nm = " << sd.m << "\n";
  std::cout << "verification: " << (ok ? "PASS" : "FAIL") << "\n";
  return ok ? kOk : kInternal;
}

int cmd_iso(const std::string& path_a, const std::string& path_b,
            const std::string& emit) {
  auto g = load_group(path_a);
  auto h = load_group(path_b);
  std::string reason;
  auto iso = group_isomorphism(*g, *h, &reason);
  if (!iso) {
    std::cout << "NOT-ISOMORPHIC (" << reason << ")\n";
    return kNegative;
  }
  if (!verify_isomorphism(*g, *h, *iso)) {
    std::cout << "FAIL (certificate did not verify)\n";
    return kInternal;
  }
  std::cout << "ISOMORPHIC (k = " << iso->k << ", verified)\n";
  if (!emit.empty()) {
    std::ofstream out(emit);
    if (!out) throw std::invalid_argument("cannot write " + emit);
    auto gens = g->generators();
    for (const auto& [src, dst] : iso->gen_images) {
      auto it = std::find(gens.begin(), gens.end(), src);
      out << (it - gens.begin()) << " -> " << enc_to_text(dst) << "\n";
    }
  }
  return kOk;
}

int cmd_setdlog(const std::string& path) {
  auto [s_list, t_list] = read_setdlog_file(path);
  auto sol = set_discrete_log(s_list, t_list);
  if (!sol) {
    std::cout << "NONE\n";
    return kNegative;
  }
  std::cout << "m = " << sol->m << "\nrep = " << sol->rep << "\nsubgroup =";
  for (u64 s : sol->subgroup_gens) std::cout << " " << s;
  std::cout << "\nmembers =";
  for (u64 k : coset_members(*sol)) std::cout << " " << k;
  std::cout << "\n";
  return kOk;
}

int cmd_conjlog(const std::string& path) {
  auto mats = read_matrix_file(path);
  if (mats.empty() || mats.size() % 2 != 0)
    throw std::invalid_argument("conjlog input must hold matrix pairs");
  ConjLogInstance inst;
  for (std::size_t i = 0; i < mats.size(); i += 2)
    inst.blocks.push_back({mats[i], mats[i + 1]});
  auto sol = dlog_up_to_conjugacy(inst);
  if (!sol) {
    std::cout << "NONE\n";
    return kNegative;
  }
  std::cout << "k = " << sol->k << "\n";
  for (std::size_t h = 0; h < sol->x_list.size(); ++h) {
    std::cout << "X[" << h << "] =\n";
    write_matrix(std::cout, sol->x_list[h]);
  }
  return kOk;
}

int cmd_matform(const std::string& path) {
  auto mats = read_matrix_file(path);
  if (mats.empty()) throw std::invalid_argument("no matrices in " + path);
  for (std::size_t idx = 0; idx < mats.size(); ++idx) {
    std::cout << "matrix " << idx << ":\n";
    auto inv = invariant_factors(mats[idx]);
    std::cout << "  invariant factors:";
    for (const Poly& f : inv) std::cout << " " << f.to_string();
    std::cout << "\n";
    auto ed = elementary_divisors(mats[idx]);
    for (const auto& [key, roots] : ed.buckets) {
      std::cout << "  sigma(d=" << key.first << ", l=" << key.second << "):";
      for (const FFElem& r : roots) std::cout << " " << elem_to_text(r);
      std::cout << "\n";
    }
  }
  return kOk;
}

int cmd_quantum_demo(u64 seed) {
  std::mt19937_64 rng(seed);
  u64 a = 7, n = 15;
  std::cout << "order finding: a = " << a << ", N = " << n << "\n";
  for (int attempt = 1; attempt <= 4; ++attempt) {
    u64 cand = shor_order_attempt(a, n, rng);
    std::cout << "  attempt " << attempt << ": candidate "
              << (cand ? std::to_string(cand) : "none") << "\n";
  }
  u64 ord = shor_order(a, n, rng);
  std::cout << "  verified order: " << ord << " (" << a << "^" << ord
            << " = 1 mod " << n << ")\n";

  std::cout << "hidden subgroup sampling over Z_4 x Z_2, oracle hides <(2,1)>\n";
  auto f = [](const std::vector<u64>& x) { return (x[0] + 2 * x[1]) % 4; };
  for (int s = 1; s <= 4; ++s) {
    auto c = hsp_sample({4, 2}, f, rng);
    std::cout << "  sample " << s << ": character (" << c[0] << ", " << c[1]
              << ")\n";
  }
  auto gens = hsp_recover({4, 2}, f, rng);
  std::cout << "  recovered subgroup generators:";
  for (const auto& k : gens) std::cout << " (" << k[0] << ", " << k[1] << ")";
  std::cout << "\n";
  return kOk;
}

int cmd_selftest(u64 seed, bool fault_inject) {
  AcceptanceOptions opt;
  opt.seed = seed;
  opt.fault_inject = fault_inject;
  auto results = run_acceptance(std::cout, opt);
  for (const auto& r : results)
    if (!r.passed) return kInternal;
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"group isomorphism toolkit for abelian-by-coprime-cyclic groups"};
  app.require_subcommand(1);
  u64 seed = 20240821;
  app.add_option("--seed", seed, "RNG seed threaded through randomized parts");

  auto* gen = app.add_subcommand("gen", "generate random spec files");
  std::string gen_abelian, gen_out = ".", gen_prefix = "g";
  u64 gen_m = 1;
  unsigned gen_count = 1;
  gen->add_option("--abelian", gen_abelian, "factor orders, e.g. 3,3,3,3")
      ->required();
  gen->add_option("-m,--m", gen_m, "cyclic part order")->required();
  gen->add_option("--count", gen_count, "number of specs");
  gen->add_option("--out", gen_out, "output directory");
  gen->add_option("--prefix", gen_prefix, "file name prefix");

  auto* dec = app.add_subcommand("decompose", "standard decomposition of a spec");
  std::string dec_spec;
  dec->add_option("spec", dec_spec, "spec file")->required();

  auto* iso = app.add_subcommand("iso", "decide isomorphism of two specs");
  std::string iso_a, iso_b, iso_emit;
  iso->add_option("specA", iso_a, "first spec file")->required();
  iso->add_option("specB", iso_b, "second spec file")->required();
  iso->add_option("--emit", iso_emit, "write the generator-image table here");

  auto* sdl = app.add_subcommand("setdlog", "set discrete logarithm over fields");
  std::string sdl_file;
  sdl->add_option("file", sdl_file, "multiset block file")->required();

  auto* cjl = app.add_subcommand("conjlog", "discrete log up to conjugacy");
  std::string cjl_file;
  cjl->add_option("file", cjl_file, "matrix pair file")->required();

  auto* mf = app.add_subcommand("matform", "canonical forms of matrices");
  std::string mf_file;
  mf->add_option("file", mf_file, "matrix file")->required();

  auto* qd = app.add_subcommand("quantum-demo", "sampled simulator transcript");

  auto* st = app.add_subcommand("selftest", "run the acceptance suite");
  bool st_fault = false;
  st->add_flag("--fault-inject", st_fault,
               "corrupt one criterion's data to exercise the failure path");

  for (CLI::App* sc : {gen, dec, iso, sdl, cjl, mf, qd, st}) sc->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (gen->parsed())
      return cmd_gen(gen_abelian, gen_m, gen_count, gen_out, gen_prefix, seed);
    if (dec->parsed()) return cmd_decompose(dec_spec);
    if (iso->parsed()) return cmd_iso(iso_a, iso_b, iso_emit);
    if (sdl->parsed()) return cmd_setdlog(sdl_file);
    if (cjl->parsed()) return cmd_conjlog(cjl_file);
    if (mf->parsed()) return cmd_matform(mf_file);
    if (qd->parsed()) return cmd_quantum_demo(seed);
    if (st->parsed()) return cmd_selftest(seed, st_fault);
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "internal failure: " << e.what() << "\n";
    return kInternal;
  }
  return kInputError;
}
