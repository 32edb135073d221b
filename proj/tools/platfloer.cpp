#include <platfloer/cli/pipeline.hpp>
#include <platfloer/errors.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

using namespace platfloer;
using nlohmann::json;

namespace {

enum class Format { Table, Json, Csv };

struct RunConfig {
  std::string braid_text;
  int strands = 0;
  Format format = Format::Table;
  int cls = -1;
  std::string move;
  std::string svg_path;
};

std::string gen_list(const std::vector<std::string>& names, const std::vector<int>& ids) {
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) out += (i ? " + " : "") + names[ids[i]];
  return out.empty() ? "0" : out;
}

void dump_svg(const RunConfig& cfg, const fork::ForkDiagram& F) {
  if (cfg.svg_path.empty()) return;
  std::ofstream out(cfg.svg_path);
  if (!out) throw Error("cannot write " + cfg.svg_path);
  out << F.svg();
}

braid::BraidWord load(const RunConfig& cfg) { return braid::parse_braid(cfg.braid_text, cfg.strands); }

void cmd_generators(const RunConfig& cfg) {
  const braid::BraidWord b = load(cfg);
  fork::ForkDiagram F(b);
  dump_svg(cfg, F);
  switch (cfg.format) {
    case Format::Json: {
      json j = F.to_json();
      j["schema"] = "platfloer/generators/v1";
      std::cout << j.dump(2) << '\n';
      break;
    }
    case Format::Csv:
      std::cout << "kind,name,tine,eight,x\n";
      for (const auto& z : F.zpoints())
        std::cout << "z," << z.name << ',' << z.tine << ',' << z.eight << ',' << to_string(z.x) << '\n';
      for (const auto& g : F.generators()) std::cout << "generator," << g.name << ",,,\n";
      break;
    case Format::Table:
      std::cout << "braid: " << braid::print_braid(b) << " (" << b.strands << " strands)\n";
      std::cout << "Z points (" << F.zpoints().size() << "):";
      for (const auto& z : F.zpoints()) std::cout << ' ' << z.name;
      std::cout << "\ngenerators (" << F.generators().size() << "):\n";
      for (const auto& g : F.generators()) std::cout << "  " << g.name << '\n';
      break;
  }
}

void cmd_gradings(const RunConfig& cfg) {
  const braid::BraidWord b = load(cfg);
  fork::ForkDiagram F(b);
  dump_svg(cfg, F);
  const fork::GradingTable t = fork::grade(F);
  switch (cfg.format) {
    case Format::Json: {
      json j = t.to_json(F);
      j["schema"] = "platfloer/gradings/v1";
      j["braid"] = braid::print_braid(b);
      std::cout << j.dump(2) << '\n';
      break;
    }
    case Format::Csv:
      std::cout << "kind,name,Q*,P*,Q,P,T,R~,R\n";
      for (std::size_t z = 0; z < t.q_star.size(); ++z)
        std::cout << "z," << F.zpoints()[z].name << ',' << t.q_star[z] << ',' << t.p_star[z] << ",,,,,\n";
      for (std::size_t g = 0; g < t.rows.size(); ++g) {
        const auto& r = t.rows[g];
        std::cout << "generator," << F.generators()[g].name << ",,," << r.Q << ',' << r.P << ',' << r.T << ','
                  << r.Rtilde << ',' << to_string(r.R) << '\n';
      }
      break;
    case Format::Table:
      std::cout << "braid: " << braid::print_braid(b) << "\n\n" << t.markdown(F);
      break;
  }
}

void cmd_homology(const RunConfig& cfg) {
  const braid::BraidWord b = load(cfg);
  app::Analysis A(b);
  dump_svg(cfg, A.fork());
  const auto& H = A.heegaard();
  if (!H.is_nice()) {
    if (cfg.format == Format::Json) {
      json j = H.to_json();
      j["schema"] = "platfloer/diagram/v1";
      std::cout << j.dump(2) << '\n';
    }
    throw NotNice("the Heegaard diagram is not nice", H.census());
  }
  const app::FloerData& f = A.floer();
  if (cfg.cls >= static_cast<int>(f.classes.size())) throw Error("no class " + std::to_string(cfg.cls));
  auto shown = [&](int c) { return cfg.cls < 0 || cfg.cls == c; };

  switch (cfg.format) {
    case Format::Json: {
      json j;
      j["schema"] = "platfloer/homology/v1";
      j["braid"] = braid::print_braid(b);
      j["genus"] = H.genus;
      j["nice"] = true;
      j["periodic_rank"] = f.periodic_rank;
      j["rho_note"] = "rho levels are relative: the least generator name in each class sits at 0";
      json classes = json::array();
      for (const auto& c : f.classes) {
        if (!shown(c.id)) continue;
        json members = json::array(), rho = json::object(), diff = json::object();
        for (int g : c.members) {
          members.push_back(f.names[g]);
          rho[f.names[g]] = to_string(f.rho[g]);
          json t = json::array();
          for (int y : f.d.targets[g]) t.push_back(f.names[y]);
          diff[f.names[g]] = t;
        }
        json cj = filt::to_json(f.spectral[c.id]);
        cj["id"] = c.id;
        cj["members"] = members;
        cj["rho"] = rho;
        cj["differential"] = diff;
        cj["degenerate"] = filt::is_rho_degenerate(f.complexes[c.id], f.spectral[c.id]);
        classes.push_back(cj);
      }
      j["classes"] = classes;
      json byR = json::array();
      for (const auto& [l, k] : f.by_R.infinity().dims) byR.push_back({{"level", to_string(l)}, {"dim", k}});
      j["homology"] = {{"total", f.by_R.infinity().total()}, {"by_R", byR}};
      j["degenerate"] = f.degenerate;
      std::cout << j.dump(2) << '\n';
      break;
    }
    case Format::Csv:
      std::cout << "class,generator,R,rho,gr,boundary\n";
      for (const auto& c : f.classes) {
        if (!shown(c.id)) continue;
        for (int g : c.members) {
          std::string bd;
          for (int y : f.d.targets[g]) bd += (bd.empty() ? "" : " ") + f.names[y];
          std::cout << c.id << ',' << f.names[g] << ',' << to_string(f.R[g]) << ',' << to_string(f.rho[g]) << ','
                    << f.maslov[g] << ',' << bd << '\n';
        }
      }
      break;
    case Format::Table: {
      std::cout << "braid: " << braid::print_braid(b) << ", genus " << H.genus << ", nice, " << f.gens.size()
                << " generators, " << f.classes.size() << " Spin^c classes\n";
      for (const auto& c : f.classes) {
        if (!shown(c.id)) continue;
        std::cout << "\nclass " << c.id << " (" << c.members.size() << "):";
        for (int g : c.members) std::cout << ' ' << f.names[g];
        std::cout << '\n';
        for (int g : c.members)
          std::cout << "  d(" << f.names[g] << ") = " << gen_list(f.names, f.d.targets[g]) << "    R " << to_string(f.R[g])
                    << ", rho " << to_string(f.rho[g]) << '\n';
        const auto& ss = f.spectral[c.id];
        for (std::size_t r = 0; r < ss.pages.size(); ++r) {
          std::cout << "  E" << r << ":";
          for (const auto& [l, k] : ss.pages[r].dims) std::cout << " rho " << to_string(l) << ": " << k;
          std::cout << '\n';
        }
        std::cout << "  stable from E" << ss.pages.size() - 1 << '\n';
      }
      std::cout << "\nhomology by R level:";
      for (const auto& [l, k] : f.by_R.infinity().dims) std::cout << " R=" << to_string(l) << ": " << k;
      std::cout << " (total " << f.by_R.infinity().total() << ")\n";
      std::cout << "rho-degenerate: " << (f.degenerate ? "true" : "false") << '\n';
      std::cout << "rho is relative within each class; the absolute shift is not computed\n";
      break;
    }
  }
}

void cmd_check_move(const RunConfig& cfg) {
  const braid::BraidWord b = load(cfg);
  if (!cfg.svg_path.empty()) dump_svg(cfg, fork::ForkDiagram(b));
  const app::MoveReport rep = app::check_move(b, cfg.move);
  switch (cfg.format) {
    case Format::Json: {
      json j;
      j["schema"] = "platfloer/check-move/v1";
      j["move"] = rep.move;
      j["before"] = rep.before;
      j["after"] = rep.after;
      j["deltas"] = rep.deltas;
      j["fingerprints"] = {{"compared", rep.fingerprints_compared}, {"equal", rep.fingerprints_equal}};
      j["summary"] = rep.summary();
      std::cout << j.dump(2) << '\n';
      break;
    }
    case Format::Csv: {
      std::string d;
      for (const auto& s : rep.deltas) d += (d.empty() ? "" : ";") + s;
      std::cout << "move,before,after,deltas,fingerprints\n"
                << rep.move << ',' << rep.before << ',' << rep.after << ',' << d << ','
                << (rep.fingerprints_compared ? (rep.fingerprints_equal ? "equal" : "differ") : "not compared") << '\n';
      break;
    }
    case Format::Table:
      std::cout << "move " << rep.move << ": " << rep.before << " -> " << rep.after << '\n' << rep.summary() << '\n';
      break;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Heegaard Floer gradings and filtrations from plat braids"};
  app.require_subcommand(1);
  RunConfig cfg;
  const std::map<std::string, Format> formats{{"table", Format::Table}, {"json", Format::Json}, {"csv", Format::Csv}};

  auto common = [&](CLI::App* sub) {
    sub->add_option("braid", cfg.braid_text, "braid word, e.g. \"s2^3\" or \"s1 s2^-1\"")->required();
    sub->add_option("-n,--strands", cfg.strands, "number of strands (even)")->required();
    sub->add_option("--format", cfg.format, "table, json or csv")->transform(CLI::CheckedTransformer(formats));
    sub->add_option("--dump-svg", cfg.svg_path, "write the fork diagram as SVG");
  };
  auto* gens = app.add_subcommand("generators", "list Z points and Bigelow generators");
  common(gens);
  auto* grad = app.add_subcommand("gradings", "Q*, P*, T, Q, P, R~ and R tables");
  common(grad);
  auto* hom = app.add_subcommand("homology", "differential, Spin^c classes, homology and pages");
  common(hom);
  hom->add_option("--class", cfg.cls, "report one Spin^c class only");
  auto* mv = app.add_subcommand("check-move", "compare gradings and page fingerprints across a move");
  common(mv);
  mv->add_option("--move", cfg.move, "A, B, Ci (with ^-1 for inverses), stab, destab or mirror")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*gens) cmd_generators(cfg);
    if (*grad) cmd_gradings(cfg);
    if (*hom) cmd_homology(cfg);
    if (*mv) cmd_check_move(cfg);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 2;
  } catch (const InvalidBraid& e) {
    std::cerr << "invalid braid: " << e.what() << '\n';
    return 2;
  } catch (const MoveError& e) {
    std::cerr << "invalid move: " << e.what() << '\n';
    return 2;
  } catch (const NotAKnot& e) {
    std::cerr << "not a knot: " << e.what() << '\n';
    return 3;
  } catch (const NotNice& e) {
    std::cerr << "not nice: " << e.what() << "\nregion census: " << e.census() << '\n';
    return 4;
  } catch (const InternalInconsistency& e) {
    std::cerr << "internal inconsistency: " << e.what() << '\n';
    return 5;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 5;
  }
  return 0;
}
