#include "threadkit/cli.hpp"

#include "threadkit/export.hpp"
#include "threadkit/generators.hpp"
#include "threadkit/io.hpp"
#include "threadkit/thread3d.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cstdio>
#include <future>
#include <iostream>
#include <numbers>
#include <sstream>

namespace threadkit {

namespace {

struct Outcome {
  int code = kExitOk;
  std::string out, err;
};

std::string anchors_json(const std::optional<Anchors>& a) {
  if (!a) return "null";
  return "[" + std::to_string(a->a1) + ", " + std::to_string(a->a2) + ", " + std::to_string(a->b1) + ", " +
         std::to_string(a->b2) + "]";
}

std::string param_json(const ChainParam& p) {
  return "{\"edge\": " + std::to_string(p.edge) + ", \"t\": \"" + format_scalar(p.t) + "\"}";
}

std::string dir_json(const Dir2& d) { return "[\"" + format_scalar(d.dx) + "\", \"" + format_scalar(d.dy) + "\"]"; }

std::string arc_json(const NormalArc& a) { return "{\"lo\": " + dir_json(a.lo) + ", \"hi\": " + dir_json(a.hi) + "}"; }

std::string certificate_json(const Verdict& v) {
  std::ostringstream out;
  out << "{\n  \"threadable\": " << (v.threadable ? "true" : "false") << ",\n";
  if (v.witness) out << "  \"witness\": " << param_json(v.witness->param) << ",\n";
  out << "  \"intervals\": [";
  for (std::size_t k = 0; k < v.certificate.size(); ++k) {
    const auto& c = v.certificate[k];
    out << (k ? ",\n" : "\n") << "    {\"start\": " << param_json(c.start) << ", \"end\": " << param_json(c.end)
        << ", \"prefix\": " << anchors_json(c.prefix) << ", \"suffix\": " << anchors_json(c.suffix)
        << ", \"arc_start\": " << arc_json(c.arc_start) << ", \"arc_end\": " << arc_json(c.arc_end) << "}";
  }
  out << "\n  ]\n}\n";
  return out.str();
}

void print_events(std::ostream& out, const char* label, const HullPass& pass) {
  for (const auto& e : pass.events)
    out << label << " " << format_param(e.param) << " " << to_string(e.kind) << " vertex " << e.vertex << "\n";
}

Chain2 need_2d(const AnyChain& c) {
  if (const auto* c2 = std::get_if<Chain2>(&c)) return *c2;
  throw SchemaError("this command needs a 2D chain");
}

// Runs `body`, turning exceptions into exit codes and stderr text.
template <class F>
Outcome guarded(const std::string& label, F body) {
  Outcome o;
  try {
    body(o);
  } catch (const ChainError& e) {
    o.code = kExitInvalidInput;
    o.err += label + ": invalid chain: " + e.what() + "\n";
  } catch (const SchemaError& e) {
    o.code = kExitInvalidInput;
    o.err += label + ": " + e.what() + "\n";
  } catch (const IoError& e) {
    o.code = kExitInvalidInput;
    o.err += label + ": " + e.what() + "\n";
  } catch (const ParameterError& e) {
    o.code = kExitInvalidInput;
    o.err += label + ": " + e.what() + "\n";
  } catch (const std::exception& e) {
    o.code = kExitInternal;
    o.err += label + ": internal error: " + e.what() + "\n";
  }
  return o;
}

struct CheckOptions {
  bool oracle = false;
  bool events = false;
  std::string certificate;
};

Outcome check_file(const std::string& file, const CheckOptions& opt) {
  return guarded(file, [&](Outcome& o) {
    const Chain2 c = need_2d(parse_chain(file));
    const Verdict v = decide(c);
    std::ostringstream out;
    if (opt.events) {
      print_events(out, "forward", growing_pass(c, PassDirection::Forward));
      print_events(out, "backward", growing_pass(c, PassDirection::Backward));
    }
    if (opt.oracle) {
      const Verdict w = oracle_decide(c);
      if (w.threadable != v.threadable) {
        o.code = kExitInternal;
        o.err += file + ": decide and oracle disagree\n";
        return;
      }
    }
    if (v.threadable)
      out << file << ": threadable\n";
    else
      out << file << ": not threadable, witness " << format_param(v.witness->param) << "\n";
    if (!opt.certificate.empty()) write_file_atomic(opt.certificate, certificate_json(v));
    o.out = out.str();
    o.code = v.threadable ? kExitOk : kExitNotThreadable;
  });
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Decide whether polygonal chains can be threaded through a point-hole."};
  app.name("threadkit");
  app.require_subcommand(1);

  std::vector<std::string> check_files;
  CheckOptions check_opt;
  auto* check = app.add_subcommand("check", "Decide threadability of 2D chains");
  check->add_option("files", check_files, "Chain documents")->required();
  check->add_flag("--oracle", check_opt.oracle, "Cross-check against the brute-force oracle");
  check->add_flag("--events", check_opt.events, "Print growing-hull events");
  check->add_option("--certificate", check_opt.certificate, "Write the certificate as JSON");

  std::string plan_file, svg_dir, json_out;
  int frames = 16;
  auto* plan_cmd = app.add_subcommand("plan", "Synthesize a threading motion and export frames");
  plan_cmd->add_option("file", plan_file, "Chain document")->required();
  plan_cmd->add_option("--frames", frames, "Number of frames")->check(CLI::PositiveNumber);
  auto* svg_opt = plan_cmd->add_option("--svg", svg_dir, "Directory for SVG frames");
  auto* json_opt = plan_cmd->add_option("--json", json_out, "JSON frame file");
  svg_opt->excludes(json_opt);

  std::string gen_kind, gen_out;
  std::size_t gen_n = 10;
  std::uint64_t gen_seed = 1;
  int fan_k = 4;
  double fan_inner = 1, fan_outer = 10, fan_delta = std::numbers::pi / 40;
  auto* gen = app.add_subcommand("gen", "Generate a chain");
  gen->add_option("kind", gen_kind, "monotone | fan | random")->required()->check(CLI::IsMember({"monotone", "fan", "random"}));
  gen->add_option("--n", gen_n, "Vertex count (monotone, random)");
  gen->add_option("--seed", gen_seed, "Seed (monotone, random); THREADKIT_SEED overrides");
  gen->add_option("--k", fan_k, "Spike count (fan)");
  gen->add_option("--r-inner", fan_inner, "Inner radius (fan)");
  gen->add_option("--r-outer", fan_outer, "Outer radius (fan)");
  gen->add_option("--delta", fan_delta, "Angular step in radians (fan)");
  gen->add_option("-o,--output", gen_out, "Output file")->required();

  std::string file3d;
  int samples = 8;
  auto* check3d = app.add_subcommand("check3d", "Sampled threadability check for 3D chains");
  check3d->add_option("file", file3d, "Chain document (2D chains are lifted to z = 0)")->required();
  check3d->add_option("--samples", samples, "Samples per edge")->check(CLI::PositiveNumber);

  std::string cost_file;
  int cost_samples = 32;
  auto* cost = app.add_subcommand("cost", "Total rotation of the threading motion");
  cost->add_option("file", cost_file, "Chain document")->required();
  cost->add_option("--samples", cost_samples, "Samples per motion interval")->check(CLI::PositiveNumber);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << e.what() << "\n" << app.help();
    return kExitInvalidInput;
  }

  std::vector<Outcome> results;
  if (*check) {
    if (check_files.size() > 1 && !check_opt.certificate.empty()) {
      err << "--certificate needs a single input file\n";
      return kExitInvalidInput;
    }
    std::vector<std::future<Outcome>> jobs;
    for (const auto& f : check_files) jobs.push_back(std::async(std::launch::async, check_file, f, check_opt));
    for (auto& j : jobs) results.push_back(j.get());
  } else if (*plan_cmd) {
    results.push_back(guarded(plan_file, [&](Outcome& o) {
      const Chain2 c = need_2d(parse_chain(plan_file));
      const Verdict v = decide(c);
      if (!v.threadable) {
        o.code = kExitNotThreadable;
        o.out = plan_file + ": not threadable, witness " + format_param(v.witness->param) + "\n";
        return;
      }
      const MotionPlan mp = plan(c);
      if (!svg_dir.empty()) {
        const auto paths = export_svg_frames(mp, frames, svg_dir);
        o.out = plan_file + ": wrote " + std::to_string(paths.size()) + " SVG frames to " + svg_dir + "\n";
      } else if (!json_out.empty()) {
        export_frames_json(mp, frames, json_out);
        o.out = plan_file + ": wrote " + std::to_string(frames) + " frames to " + json_out + "\n";
      } else {
        o.out = plan_file + ": " + std::to_string(mp.intervals.size()) + " motion intervals\n";
      }
    }));
  } else if (*gen) {
    results.push_back(guarded(gen_out, [&](Outcome& o) {
      const std::uint64_t seed = seed_from_env().value_or(gen_seed);
      if (gen_kind == "monotone")
        write_chain(gen_monotone(gen_n, seed), gen_out, "monotone");
      else if (gen_kind == "random")
        write_chain(gen_random_simple(gen_n, seed), gen_out, "random");
      else
        write_chain(gen_fan(fan_k, fan_inner, fan_outer, fan_delta), gen_out, "fan");
      o.out = "wrote " + gen_out + "\n";
    }));
  } else if (*check3d) {
    results.push_back(guarded(file3d, [&](Outcome& o) {
      const AnyChain any = parse_chain(file3d);
      const Chain3 c = std::holds_alternative<Chain3>(any) ? std::get<Chain3>(any) : lift(std::get<Chain2>(any));
      const Verdict3 v = decide3_sampled(c, samples);
      if (v.threadable_at_samples) {
        o.out = file3d + ": no obstruction at " + std::to_string(v.checked_params) + " sampled params\n";
      } else {
        o.out = file3d + ": not threadable, witness " + format_param(*v.witness) + "\n";
        o.code = kExitNotThreadable;
      }
    }));
  } else if (*cost) {
    results.push_back(guarded(cost_file, [&](Outcome& o) {
      const Chain2 c = need_2d(parse_chain(cost_file));
      const Verdict v = decide(c);
      if (!v.threadable) {
        o.code = kExitNotThreadable;
        o.out = cost_file + ": not threadable, witness " + format_param(v.witness->param) + "\n";
        return;
      }
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.17g", rotation_cost(plan(c), cost_samples));
      o.out = cost_file + ": rotation cost " + buf + "\n";
    }));
  }

  int code = kExitOk;
  for (const auto& r : results) {
    out << r.out;
    err << r.err;
    code = std::max(code, r.code);
  }
  return code;
}

int cli(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace threadkit
