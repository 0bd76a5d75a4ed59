#include "susyqm/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <tuple>

#include <CLI11.hpp>

#include "susyqm/analysis.hpp"
#include "susyqm/errors.hpp"
#include "susyqm/io.hpp"
#include "susyqm/spectral.hpp"
#include "susyqm/susy.hpp"

namespace susyqm::cli {

namespace {

struct Options {
  std::string verb;
  std::string input;
  std::string output;
  bool json = false;
  std::optional<double> tol_algebra;
  std::optional<double> tol_kernel;
  std::optional<double> tol_pairing;
  std::optional<std::size_t> d_plus;
  bool two_charges = false;

  NumericPolicy policy() const {
    NumericPolicy p;
    if (tol_algebra) p.algebra_tol = p.hermiticity_tol = *tol_algebra;
    if (tol_kernel) p.kernel_tol = *tol_kernel;
    if (tol_pairing) p.pairing_tol = *tol_pairing;
    p.validate();
    return p;
  }
};

/// Sends an output document to --output when given, else to `out`.
void emit(const Options& opt, std::ostream& out, const std::string& text) {
  if (opt.output.empty()) {
    out << text;
    return;
  }
  std::ofstream file(opt.output);
  if (!file) throw Error("cannot write " + opt.output);
  file << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string signed_int(int v) {
  std::ostringstream os;
  os << std::showpos << v;
  return os.str();
}

ValidationReport check_file(const SystemFile& s, const NumericPolicy& policy) {
  if (s.involution) {
    return s.complex_charges ? check_def4(s.hamiltonian, *s.involution, s.charges, policy)
                             : check_def3(s.hamiltonian, *s.involution, s.charges, policy);
  }
  return s.complex_charges ? check_def2(s.hamiltonian, s.charges, policy)
                           : check_def1(s.hamiltonian, s.charges, policy);
}

/// A graded system from a file that carries K; throws ValidationError when
/// the file does not satisfy its definition.
GradedSystem load_graded(const Options& opt, const NumericPolicy& policy) {
  const SystemFile s = system_from_json(read_json_file(opt.input));
  if (!s.involution)
    throw ParseError(opt.input + ": verb '" + opt.verb + "' needs a system file with K");
  return s.complex_charges ? validate_def4(s.hamiltonian, *s.involution, s.charges, policy)
                           : validate_def3(s.hamiltonian, *s.involution, s.charges, policy);
}

int do_validate(const Options& opt, const NumericPolicy& policy, std::ostream& out) {
  const SystemFile s = system_from_json(read_json_file(opt.input));
  const ValidationReport report = check_file(s, policy);
  emit(opt, out, opt.json ? dump(report_to_json(report)) : report.describe());
  return report.valid() ? kOk : kInvalid;
}

int do_involution(const Options& opt, const NumericPolicy& policy, std::ostream& out,
                  std::ostream& err) {
  const SystemFile s = system_from_json(read_json_file(opt.input));
  ComplexMatrix q1;
  ComplexMatrix q2;
  if (s.complex_charges && s.charges.size() == 1) {
    std::tie(q1, q2) = real_from_complex(s.charges.front());
  } else if (!s.complex_charges && s.charges.size() == 2) {
    q1 = s.charges[0];
    q2 = s.charges[1];
  } else {
    throw ParseError(opt.input + ": involution needs two real charges or one complex charge");
  }
  validate_def1(s.hamiltonian, {q1, q2}, policy);
  const ConstructedInvolution c = construct_involution(q1, q2, opt.d_plus, policy);
  const GradedSystem g = validate_def3(s.hamiltonian, c.involution.matrix(), {q1, q2}, policy);
  emit(opt, out, dump(system_to_json(to_system_file(g))));
  std::ostream& note = opt.output.empty() ? err : out;
  note << "involution: dim ker Q1 = " << c.kernel_dim << ", d_plus = " << c.d_plus
       << ", d_minus = " << c.d_minus() << "\n";
  return kOk;
}

int do_index(const Options& opt, const NumericPolicy& policy, std::ostream& out) {
  const IndexReport r = witten_index(load_graded(opt, policy), policy);
  if (opt.json) {
    emit(opt, out, dump(report_to_json(r)));
    return kOk;
  }
  std::ostringstream os;
  os << "witten_index " << signed_int(r.index) << "\n"
     << "  dim ker A - dim ker A^dag = " << r.kernel_a << " - " << r.kernel_a_dagger << " = "
     << signed_int(r.via_a()) << "\n"
     << "  dim ker H+ - dim ker H-   = " << r.kernel_h_plus << " - " << r.kernel_h_minus
     << " = " << signed_int(r.via_hamiltonian()) << "\n";
  if (!r.borderline.empty())
    os << "  warning: " << r.borderline.size() << " singular values near the kernel cutoff\n";
  emit(opt, out, os.str());
  return kOk;
}

void print_values(std::ostream& os, const char* label, const std::vector<double>& v) {
  os << label << " (" << v.size() << "):\n";
  for (double x : v) os << "  " << std::setprecision(12) << x << "\n";
}

int do_spectrum(const Options& opt, const NumericPolicy& policy, std::ostream& out) {
  const StandardRepresentation rep = standard_representation(load_graded(opt, policy), policy);
  const std::vector<double> b = eigvalsh(rep.h_plus, policy);
  const std::vector<double> f = eigvalsh(rep.h_minus, policy);
  if (opt.json) {
    emit(opt, out, dump(Json{{"bosonic_eigenvalues", b}, {"fermionic_eigenvalues", f}}));
    return kOk;
  }
  std::ostringstream os;
  print_values(os, "bosonic", b);
  print_values(os, "fermionic", f);
  emit(opt, out, os.str());
  return kOk;
}

int do_pair(const Options& opt, const NumericPolicy& policy, std::ostream& out) {
  const SpectralReport r = spectral_pairing_report(load_graded(opt, policy), policy);
  if (opt.json) {
    emit(opt, out, dump(report_to_json(r)));
    return kOk;
  }
  std::ostringstream os;
  os << "zero modes: " << r.unpaired_bosonic_zero_modes << " bosonic, "
     << r.unpaired_fermionic_zero_modes << " fermionic (threshold " << std::setprecision(3)
     << r.zero_threshold << ")\n"
     << "witten_index " << signed_int(r.witten_index) << "\n"
     << "pairs (" << r.pairs.size() << "):\n";
  os << "  " << std::setw(6) << "b" << std::setw(6) << "f" << std::setw(22) << "bosonic"
     << std::setw(22) << "fermionic" << std::setw(12) << "gap\n";
  for (std::size_t i = 0; i < r.pairs.size(); ++i) {
    const EigenPair& p = r.pairs[i];
    const bool borderline =
        std::find(r.borderline_pairs.begin(), r.borderline_pairs.end(), i) != r.borderline_pairs.end();
    os << "  " << std::setw(6) << p.bosonic_index << std::setw(6) << p.fermionic_index
       << std::setprecision(14) << std::setw(22) << p.bosonic_value << std::setw(22)
       << p.fermionic_value << std::setprecision(3) << std::setw(11) << p.relative_gap
       << (borderline ? " borderline" : "") << "\n";
  }
  emit(opt, out, os.str());
  return kOk;
}

int do_model(const Options& opt, const NumericPolicy& policy, std::ostream& out) {
  const ModelSpec spec = model_spec_from_json(read_json_file(opt.input));
  GradedSystem g = build_model(spec, policy);
  if (opt.two_charges) {
    if (g.complex_charges) {
      g = to_real_charges(g, policy);
    } else {
      const ComplexMatrix q2 =
          second_supercharge(g.involution, g.charges.front(), ChargeSign::Minus, policy);
      g = validate_def3(g.hamiltonian, g.involution.matrix(), {g.charges.front(), q2}, policy);
    }
  }
  emit(opt, out, dump(system_to_json(to_system_file(g))));
  return kOk;
}

int do_repr(const Options& opt, const NumericPolicy& policy, std::ostream& out) {
  const StandardRepresentation rep = standard_representation(load_graded(opt, policy), policy);
  const std::filesystem::path dir = opt.output.empty() ? "." : opt.output;
  std::filesystem::create_directories(dir);
  write_json_file(dir / "A.json", matrix_to_json(rep.a_operator));
  write_json_file(dir / "h_plus.json", matrix_to_json(rep.h_plus));
  write_json_file(dir / "h_minus.json", matrix_to_json(rep.h_minus));
  out << "wrote A (" << rep.a_operator.rows() << "x" << rep.a_operator.cols()
      << "), h_plus, h_minus to " << dir.string() << "\n";
  return kOk;
}

int dispatch(const Options& opt, std::ostream& out, std::ostream& err) {
  const NumericPolicy policy = opt.policy();
  if (opt.verb == "validate") return do_validate(opt, policy, out);
  if (opt.verb == "involution") return do_involution(opt, policy, out, err);
  if (opt.verb == "index") return do_index(opt, policy, out);
  if (opt.verb == "spectrum") return do_spectrum(opt, policy, out);
  if (opt.verb == "pair") return do_pair(opt, policy, out);
  if (opt.verb == "model") return do_model(opt, policy, out);
  return do_repr(opt, policy, out);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Finite-dimensional supersymmetric quantum mechanics toolkit", "susyqm"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--tol-algebra", opt.tol_algebra, "Algebra and Hermiticity tolerance");
  app.add_option("--tol-kernel", opt.tol_kernel, "Relative kernel cutoff");
  app.add_option("--tol-pairing", opt.tol_pairing, "Relative eigenvalue pairing tolerance");
  app.add_flag("--json", opt.json, "Machine-readable output");
  app.add_option("-o,--output", opt.output, "Output file (directory for repr)");

  const std::vector<std::pair<const char*, const char*>> verbs = {
      {"validate", "Check a system file against its definition"},
      {"involution", "Construct K for a two-charge system"},
      {"index", "Witten index by both kernel formulas"},
      {"spectrum", "Sector spectra of the standard representation"},
      {"pair", "Pairing table of the sector spectra"},
      {"model", "Build a model system from a model spec"},
      {"repr", "Write A, h_plus and h_minus as matrix files"}};
  for (const auto& [name, help] : verbs) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("input", opt.input, "Input JSON file")->required();
    if (std::string(name) == "involution")
      sub->add_option("--d-plus", opt.d_plus, "Kernel vectors assigned to K = +1");
    if (std::string(name) == "model")
      sub->add_flag("--two-charges", opt.two_charges, "Emit the n=2 form (Q, -iKQ)");
    sub->callback([&opt, name = std::string(name)] { opt.verb = name; });
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kParse;
  }

  try {
    return dispatch(opt, out, err);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n" << e.report().describe();
    return kInvalid;
  } catch (const NotHermitianError& e) {
    err << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const PairingError& e) {
    err << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const CrossCheckError& e) {
    err << "internal cross-check failed: " << e.what() << "\n";
    return kCrossCheck;
  } catch (const ConvergenceError& e) {
    err << "internal cross-check failed: " << e.what() << "\n";
    return kCrossCheck;
  } catch (const std::exception& e) {
    // ParseError, DimensionError and rejected parameters all mean bad input.
    err << "error: " << e.what() << "\n";
    return kParse;
  }
}

}  // namespace susyqm::cli
