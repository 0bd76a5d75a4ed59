// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "susyqm/analysis.hpp"
#include "susyqm/cli.hpp"
#include "susyqm/errors.hpp"
#include "susyqm/io.hpp"
#include "susyqm/models.hpp"
#include "susyqm/spectral.hpp"
#include "susyqm/susy.hpp"

using namespace susyqm;

namespace {

const NumericPolicy kPolicy;

/// Collects the first few reasons a criterion failed.
struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& why) {
    if (ok) return;
    pass = false;
    if (notes.size() < 5) notes.push_back(why);
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

/// Which relation a one-entry corruption must break, by construction.
struct Corruption {
  enum Target { H, K, Q } target;
  std::size_t row;
  std::size_t col;
  std::string relation;
};

/// Position classes in the standard basis with K = diag(I_b, −I_f).
Corruption pick_corruption(int mode, std::size_t nb, std::size_t nf, Lcg& rng) {
  auto in_b = [&] { return static_cast<std::size_t>(uniform(rng, 0.0, double(nb))); };
  auto in_f = [&] { return nb + static_cast<std::size_t>(uniform(rng, 0.0, double(nf))); };
  auto distinct_b = [&](std::size_t& i, std::size_t& j) {
    i = in_b();
    do j = in_b(); while (j == i);
  };
  std::size_t i = 0;
  std::size_t j = 0;
  switch (mode) {
    case 0:  // off-diagonal H entry: H no longer Hermitian
      distinct_b(i, j);
      return {Corruption::H, i, j, "H hermitian"};
    case 1:  // real diagonal H entry: Hermitian and even, but not q q† + q† q
      i = in_f();
      return {Corruption::H, i, i, "{q1,q1^dag}=2H"};
    case 2:  // H entry coupling the sectors
      return {Corruption::H, in_b(), in_f(), "[H,K]=0"};
    case 3:  // real diagonal K entry
      i = in_b();
      return {Corruption::K, i, i, "K^2=I"};
    case 4:  // off-diagonal K entry
      distinct_b(i, j);
      return {Corruption::K, i, j, "K hermitian"};
    case 5:  // inside the A† block of q
      return {Corruption::Q, in_b(), in_f(), "{q1,q1^dag}=2H"};
    case 6:  // lower-left block of q: still odd, but q² ≠ 0
      return {Corruption::Q, in_f(), in_b(), "{q1,q1}=0"};
    default:  // diagonal block of q: no longer odd
      distinct_b(i, j);
      return {Corruption::Q, i, j, "{K,q1}=0"};
  }
}

// 1. Validators: 500 valid random systems, 500 single-entry corruptions.
Outcome criterion1() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  Lcg rng(1001);
  double worst = 0.0;
  for (int s = 0; s < 500; ++s) {
    const auto nb = 1 + static_cast<std::size_t>(uniform(rng, 0.0, 32.0));
    const auto nf = 1 + static_cast<std::size_t>(uniform(rng, 0.0, 32.0));
    const GradedSystem g = random_graded_system(nb, nf, 5000 + s, kPolicy, {.conjugate = s % 2 == 1});
    const ValidationReport r = check_def4(g.hamiltonian, g.involution.matrix(), g.charges, kPolicy);
    worst = std::max(worst, r.max_residual());
    o.require(r.valid() && r.max_residual() < 1e-10, "valid system " + std::to_string(s) + " rejected");
  }

  for (int s = 0; s < 500; ++s) {
    const auto nb = 2 + static_cast<std::size_t>(uniform(rng, 0.0, 31.0));
    const auto nf = 2 + static_cast<std::size_t>(uniform(rng, 0.0, 31.0));
    const GradedSystem g = random_graded_system(nb, nf, 9000 + s, kPolicy);
    ComplexMatrix h = g.hamiltonian;
    ComplexMatrix k = g.involution.matrix();
    ComplexMatrix q = g.charges.front();
    const Corruption c = pick_corruption(s % 8, nb, nf, rng);
    ComplexMatrix& target = c.target == Corruption::H ? h : c.target == Corruption::K ? k : q;
    target(c.row, c.col) += 1e-4 * std::max(1.0, max_abs(target));
    try {
      validate_def4(h, k, {q}, kPolicy);
      o.require(false, "corruption " + std::to_string(s) + " accepted");
    } catch (const ValidationError& e) {
      o.require(e.report().failed(c.relation),
                "corruption " + std::to_string(s) + " did not name " + c.relation);
    }
  }
  const double t = seconds_since(t0);
  o.require(t < 30.0, "runtime " + fmt(t) + " s");
  o.notes.insert(o.notes.begin(), "max valid residual " + fmt(worst) + ", " + fmt(t) + " s");
  return o;
}

// 2. Complex/real supercharge round trip and validity equivalence.
Outcome criterion2() {
  Outcome o;
  Lcg rng(2002);
  double worst = 0.0;
  for (int s = 0; s < 200; ++s) {
    const auto n = 1 + static_cast<std::size_t>(uniform(rng, 0.0, 16.0));
    const ComplexMatrix q = random_matrix(n, n, rng);
    const auto [q1, q2] = real_from_complex(q);
    const double d = residual_norm(complex_from_real(q1, q2) - q) / residual_norm(q);
    worst = std::max(worst, d);
    o.require(d < 1e-12, "round trip residual " + fmt(d));
  }
  for (int s = 0; s < 400; ++s) {
    const bool corrupt = s >= 200;
    const auto nb = 2 + static_cast<std::size_t>(uniform(rng, 0.0, 10.0));
    const auto nf = 2 + static_cast<std::size_t>(uniform(rng, 0.0, 10.0));
    const GradedSystem g = to_real_charges(
        random_graded_system(nb, nf, 12000 + s, kPolicy, {.conjugate = s % 2 == 0}), kPolicy);
    ComplexMatrix q1 = g.charges[0];
    ComplexMatrix q2 = g.charges[1];
    if (corrupt) {
      // Hermitian perturbation of one charge.
      const auto i = static_cast<std::size_t>(uniform(rng, 0.0, double(nb + nf)));
      const auto j = static_cast<std::size_t>(uniform(rng, 0.0, double(nb + nf)));
      ComplexMatrix& t = s % 2 ? q1 : q2;
      const double eps = 1e-4 * max_abs(t);
      t(i, j) += eps;
      if (i != j) t(j, i) += eps;
    }
    const ComplexMatrix& h = g.hamiltonian;
    const ComplexMatrix& k = g.involution.matrix();
    const bool real_ok = check_def3(h, k, {q1, q2}, kPolicy).valid();
    const bool complex_ok = check_def4(h, k, {complex_from_real(q1, q2)}, kPolicy).valid();
    o.require(real_ok == complex_ok, "validity differs for pair " + std::to_string(s));
    o.require(real_ok == !corrupt, "pair " + std::to_string(s) + " misclassified");
  }
  o.notes.insert(o.notes.begin(), "max round-trip residual " + fmt(worst));
  return o;
}

// 3. Q' = ±iKQ gives a valid n=2 system.
Outcome criterion3() {
  Outcome o;
  Lcg rng(3003);
  double worst = 0.0;
  const std::vector<std::string> five = {"{Q1,Q1}=2H", "{Q2,Q2}=2H", "{Q1,Q2}=0", "{K,Q1}=0",
                                         "{K,Q2}=0"};
  for (int s = 0; s < 200; ++s) {
    const auto nb = 1 + static_cast<std::size_t>(uniform(rng, 0.0, 12.0));
    const auto nf = 1 + static_cast<std::size_t>(uniform(rng, 0.0, 12.0));
    const GradedSystem g = to_real_charges(
        random_graded_system(nb, nf, 15000 + s, kPolicy, {.conjugate = s % 3 == 0}), kPolicy);
    const ComplexMatrix& q = g.charges[0];
    const ChargeSign sign = s % 2 ? ChargeSign::Plus : ChargeSign::Minus;
    const ComplexMatrix q2 = second_supercharge(g.involution, q, sign, kPolicy);
    const ValidationReport r = check_def3(q * q, g.involution.matrix(), {q, q2}, kPolicy);
    o.require(r.valid(), "system " + std::to_string(s) + " invalid");
    for (const auto& name : five) {
      const RelationCheck* c = r.find(name);
      o.require(c != nullptr && c->relative() < 1e-10, "residual " + name);
      if (c) worst = std::max(worst, c->relative());
    }
  }
  o.notes.insert(o.notes.begin(), "max residual " + fmt(worst));
  return o;
}

// 4. charges_from_parts always yields Q2 = −iKQ1; negation flips the sign.
Outcome criterion4() {
  Outcome o;
  Lcg rng(4004);
  for (int s = 0; s < 100; ++s) {
    const auto n = 1 + static_cast<std::size_t>(uniform(rng, 0.0, 12.0));
    const auto [q1, q2] = charges_from_parts(random_hermitian(n, rng), random_hermitian(n, rng), kPolicy);
    const ComplexMatrix k = kron(pauli::sigma3(), ComplexMatrix::identity(n));
    o.require(check_pairing_relation(k, q1, q2, kPolicy) == PairingRelation::MinusSign,
              "parts " + std::to_string(s) + " not MinusSign");
    o.require(check_pairing_relation(k, q1, -q2, kPolicy) == PairingRelation::PlusSign,
              "negated Q2 " + std::to_string(s) + " not PlusSign");
    o.require(check_pairing_relation(k, -q1, q2, kPolicy) == PairingRelation::PlusSign,
              "negated Q1 " + std::to_string(s) + " not PlusSign");
  }
  return o;
}

/// A random N = 2 pair (Q1, Q2) with dim ker Q1 = d: A has shape f × b and
/// rank r with d = b + f − 2r.
struct TwoCharges {
  ComplexMatrix h;
  ComplexMatrix q1;
  ComplexMatrix q2;
  std::size_t d;
};

TwoCharges random_two_charges(std::size_t d, std::uint64_t seed, bool conjugate, Lcg& rng) {
  const auto r = 1 + static_cast<std::size_t>(uniform(rng, 0.0, 6.0));
  const auto extra_b = static_cast<std::size_t>(uniform(rng, 0.0, double(d + 1)));
  const std::size_t nb = r + extra_b;
  const std::size_t nf = r + (d - extra_b);
  const GradedSystem g = to_real_charges(
      random_graded_system(nb, nf, seed, kPolicy,
                           {.conjugate = conjugate, .rank = std::optional<std::size_t>(r)}),
      kPolicy);
  return {g.hamiltonian, g.charges[0], g.charges[1], d};
}

// 5. Involution construction on random pairs, plus the CLI pipeline.
Outcome criterion5() {
  Outcome o;
  Lcg rng(5005);
  const auto dir = std::filesystem::temp_directory_path() / "susyqm_acceptance_5";
  std::filesystem::create_directories(dir);
  for (int s = 0; s < 200; ++s) {
    const std::size_t d = s % 4;
    const TwoCharges p = random_two_charges(d, 20000 + s, s % 2 == 1, rng);
    const auto d_plus = static_cast<std::size_t>(uniform(rng, 0.0, double(d + 1)));
    try {
      const ConstructedInvolution c = construct_involution(p.q1, p.q2, d_plus, kPolicy);
      const ComplexMatrix& k = c.involution.matrix();
      o.require(c.kernel_dim == d, "system " + std::to_string(s) + " kernel " +
                                       std::to_string(c.kernel_dim) + " != " + std::to_string(d));
      o.require(check_involution(k, kPolicy).valid(), "K invalid for " + std::to_string(s));
      const double scale = std::max(residual_norm(p.q1), residual_norm(p.q2));
      o.require(residual_norm(anticommutator(k, p.q1)) <= kPolicy.algebra_tol * 2.0 * scale &&
                    residual_norm(anticommutator(k, p.q2)) <= kPolicy.algebra_tol * 2.0 * scale,
                "K does not anticommute for " + std::to_string(s));
    } catch (const std::exception& e) {
      o.require(false, "system " + std::to_string(s) + ": " + e.what());
    }

    if (s % 10 == 0) {
      const auto in = (dir / "n2.json").string();
      const auto out = (dir / "k.json").string();
      write_json_file(in, system_to_json({p.h, std::nullopt, {p.q1, p.q2}, false}));
      std::ostringstream sink;
      const int a = cli::run({"involution", in, "--d-plus", std::to_string(d_plus), "-o", out}, sink, sink);
      const int b = a == 0 ? cli::run({"validate", out}, sink, sink) : -1;
      o.require(a == 0 && b == 0, "pipeline exit codes " + std::to_string(a) + "," + std::to_string(b));
    }
  }
  std::filesystem::remove_all(dir);
  return o;
}

// 6. dim ker Q1 = 2: d_plus in {0, 1, 2} gives index 2·d_plus − d.
Outcome criterion6() {
  Outcome o;
  Lcg rng(6006);
  for (int trial = 0; trial < 5; ++trial) {
    const TwoCharges p = random_two_charges(2, 30000 + trial, trial % 2 == 1, rng);
    std::vector<int> seen;
    for (std::size_t d_plus = 0; d_plus <= 2; ++d_plus) {
      const ConstructedInvolution c = construct_involution(p.q1, p.q2, d_plus, kPolicy);
      const GradedSystem g = validate_def3(p.h, c.involution.matrix(), {p.q1, p.q2}, kPolicy);
      const int index = witten_index(g, kPolicy).index;
      o.require(c.kernel_dim == 2, "kernel dimension " + std::to_string(c.kernel_dim));
      o.require(index == 2 * static_cast<int>(d_plus) - 2,
                "d_plus " + std::to_string(d_plus) + " gave index " + std::to_string(index));
      seen.push_back(index);
    }
    o.require(seen == index_range(2), "indices are not {-2, 0, 2}");
  }
  return o;
}

// 7. Witten lattice model.
Outcome criterion7() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const LatticeSpec spec{101, 0.15, Boundary::Dirichlet};
  double worst_gap = 0.0;
  for (double sign : {1.0, -1.0}) {
    const GradedSystem g = witten_model_lattice(
        spec, sample_superpotential(spec, [sign](double x) { return sign * x; }), kPolicy);
    const int want = sign > 0 ? 1 : -1;
    const IndexReport ir = witten_index(g, kPolicy);
    o.require(ir.via_a() == want && ir.via_hamiltonian() == want,
              "W = " + fmt(sign) + "x: index " + std::to_string(ir.via_a()) + " / " +
                  std::to_string(ir.via_hamiltonian()));
    const SpectralReport sr = spectral_pairing_report(g, kPolicy);
    const std::size_t positives = sr.bosonic_eigenvalues.size() - sr.unpaired_bosonic_zero_modes;
    o.require(sr.pairs.size() == positives, "unpaired positive eigenvalues");
    for (const EigenPair& p : sr.pairs) worst_gap = std::max(worst_gap, p.relative_gap);
  }
  o.require(worst_gap < 1e-9, "pairing gap " + fmt(worst_gap));
  const double t = seconds_since(t0);
  o.require(t < 10.0, "runtime " + fmt(t) + " s");
  o.notes.insert(o.notes.begin(), "max pairing gap " + fmt(worst_gap) + ", " + fmt(t) + " s");
  return o;
}

// 8. Free particle on 101 periodic sites.
Outcome criterion8() {
  Outcome o;
  const GradedSystem g = free_particle_lattice({101, 1.0, Boundary::Periodic}, kPolicy);
  const SpectralReport r = spectral_pairing_report(g, kPolicy);
  o.require(r.unpaired_bosonic_zero_modes == 1 && r.unpaired_fermionic_zero_modes == 0,
            "zero modes " + std::to_string(r.unpaired_bosonic_zero_modes) + "/" +
                std::to_string(r.unpaired_fermionic_zero_modes));
  // Total zero-mode count over H, from the oracle.
  std::size_t zeros = 0;
  for (double v : oracle::eigenvalues(g.hamiltonian))
    if (std::abs(v) < 1e-10) ++zeros;
  o.require(zeros == 1, "H has " + std::to_string(zeros) + " zero modes");
  o.require(r.pairs.size() == 50, "pair count " + std::to_string(r.pairs.size()));
  // Once per sector: no degeneracy within a sector.
  for (const auto* sector : {&r.bosonic_eigenvalues, &r.fermionic_eigenvalues})
    for (std::size_t i = 1; i < sector->size(); ++i)
      o.require((*sector)[i] - (*sector)[i - 1] > 1e-6, "degenerate eigenvalue within a sector");
  const ComplexMatrix p = central_momentum({101, 1.0, Boundary::Periodic});
  const double kp = residual_norm(anticommutator(g.involution.matrix(), p));
  o.require(kp < 1e-12, "{K,p} residual " + fmt(kp));
  o.notes.insert(o.notes.begin(), "{K,p} residual " + fmt(kp));
  return o;
}

// 9. Pauli model on a 21×21 lattice in the symmetric gauge.
Outcome criterion9() {
  Outcome o;
  const PlanarLattice lattice{21, 21, 1.0};
  const GradedSystem g = pauli_lattice(lattice, symmetric_gauge(lattice, 0.05), kPolicy);
  const ValidationReport r =
      check_def3(g.hamiltonian, g.involution.matrix(), g.charges, kPolicy);
  o.require(r.valid(), "validate_def3 failed");
  const std::vector<double> ev = eigvalsh(g.hamiltonian, kPolicy);
  const double bound = -1e-8 * residual_norm(g.hamiltonian);
  o.require(ev.front() >= bound, "lowest eigenvalue " + fmt(ev.front()));
  const double kq = residual_norm(anticommutator(g.involution.matrix(), g.charges.front()));
  o.require(kq < 1e-12, "{K,Q} residual " + fmt(kq));
  o.notes.insert(o.notes.begin(), "lowest eigenvalue " + fmt(ev.front()) + ", {K,Q} residual " + fmt(kq));
  return o;
}

// 10. O(2) reparametrisation.
Outcome criterion10() {
  Outcome o;
  Lcg rng(1010);
  const GradedSystem g = to_real_charges(random_graded_system(5, 3, 77, kPolicy, {.conjugate = true}), kPolicy);
  const int index = witten_index(g, kPolicy).index;
  const double hmax = max_abs(g.hamiltonian);
  for (int s = 0; s < 50; ++s) {
    const double angle = uniform(rng, 0.0, 2.0 * std::numbers::pi);
    const Rotation2 m = s % 2 ? reflection(angle) : rotation(angle);
    const GradedSystem r = reparametrize(g, m, kPolicy);
    const ComplexMatrix& a = r.charges[0];
    const ComplexMatrix& b = r.charges[1];
    const double d1 = max_abs(a * a - g.hamiltonian) / hmax;
    const double d2 = max_abs(b * b - g.hamiltonian) / hmax;
    o.require(d1 < 1e-12 && d2 < 1e-12, "H changed by " + fmt(std::max(d1, d2)));
    o.require(r.report.valid(), "rotated system invalid");
    o.require(witten_index(r, kPolicy).index == index, "index changed");
  }
  return o;
}

// 11. Eigensolver closed forms and Penrose identities.
Outcome criterion11() {
  Outcome o;
  for (const ComplexMatrix& s : {pauli::sigma1(), pauli::sigma2(), pauli::sigma3()}) {
    const std::vector<double> v = eigh(s, kPolicy).eigenvalues;
    o.require(std::abs(v[0] + 1.0) < 1e-12 && std::abs(v[1] - 1.0) < 1e-12, "Pauli spectrum");
  }
  Lcg rng(1111);
  for (std::size_t n : {1u, 3u, 10u, 64u}) {
    std::vector<double> d;
    for (std::size_t i = 0; i < n; ++i) d.push_back(uniform(rng, -5.0, 5.0));
    const std::vector<double> v = eigh(ComplexMatrix::diagonal(std::span<const double>(d)), kPolicy).eigenvalues;
    std::sort(d.begin(), d.end());
    o.require(oracle::max_diff(v, d) < 1e-12, "diagonal spectrum");
  }
  for (int s = 0; s < 100; ++s) {
    const auto n = 1 + static_cast<std::size_t>(uniform(rng, 0.0, 64.0));
    ComplexMatrix q = random_hermitian(n, rng);
    if (s % 2 == 1 && n > 1) {
      // Rank-deficient half: Q = X H X† with X of rank n/2.
      const ComplexMatrix x = random_matrix(n, n / 2, rng);
      q = x * random_hermitian(n / 2, rng) * adjoint(x);
    }
    const ComplexMatrix qp = inverse_on_complement(q, kPolicy);
    const double tol = static_cast<double>(n) * 1e-12;
    const double nq = residual_norm(q);
    const double nqp = residual_norm(qp);
    const ComplexMatrix qqp = q * qp;
    const ComplexMatrix qpq = qp * q;
    o.require(residual_norm(qqp * q - q) <= tol * nq, "Q Q+ Q = Q, dim " + std::to_string(n));
    o.require(residual_norm(qpq * qp - qp) <= tol * nqp, "Q+ Q Q+ = Q+, dim " + std::to_string(n));
    o.require(residual_norm(qqp - adjoint(qqp)) <= tol * std::max(1.0, residual_norm(qqp)),
              "(Q Q+) hermitian, dim " + std::to_string(n));
    o.require(residual_norm(qpq - adjoint(qpq)) <= tol * std::max(1.0, residual_norm(qpq)),
              "(Q+ Q) hermitian, dim " + std::to_string(n));
  }
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"algebra validators accept 500 valid and reject 500 corrupted systems", criterion1},
      {"complex/real supercharge round trip and validity equivalence", criterion2},
      {"second supercharge yields valid n=2 systems", criterion3},
      {"charges from Hermitian parts pair with the minus sign", criterion4},
      {"involution construction on 200 random two-charge systems", criterion5},
      {"d_plus enumeration realises every index value", criterion6},
      {"Witten lattice model index and pairing", criterion7},
      {"free particle zero mode and sector spectra", criterion8},
      {"Pauli lattice validity and nonnegativity", criterion9},
      {"O(2) reparametrisation invariance", criterion10},
      {"eigensolver closed forms and Penrose identities", criterion11},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.notes.push_back(std::string("exception: ") + e.what());
    }
    if (!o.pass) ++failures;
    std::printf("%s criterion %zu: %s", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first);
    if (!o.notes.empty()) {
      std::printf(" (");
      for (std::size_t k = 0; k < o.notes.size(); ++k)
        std::printf("%s%s", k ? "; " : "", o.notes[k].c_str());
      std::printf(")");
    }
    std::printf("\n");
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
