#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "mubar/dd.hpp"
#include "mubar/parse.hpp"
#include "mubar/singular.hpp"

using json = nlohmann::ordered_json;
using namespace mubar;

namespace {

std::vector<int> parse_indices(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stoi(item));
  }
  return out;
}

MuIndex make_index(const std::string& indices, int of) {
  return MuIndex{parse_indices(indices), of};
}

// "split" or the k(k-1)/2 upper-triangle entries l12,l13,...,l(k-1)k.
LinkingMatrix parse_class(const std::string& text, int k) {
  LinkingMatrix m = split_class(k);
  if (text == "split") return m;
  const std::vector<int> vals = parse_indices(text);
  if (static_cast<int>(vals.size()) != k * (k - 1) / 2)
    throw std::invalid_argument("linking class needs k(k-1)/2 entries");
  std::size_t at = 0;
  for (int i = 1; i <= k; ++i)
    for (int j = i + 1; j <= k; ++j) {
      m.entries[(i - 1) * k + (j - 1)] = vals[at];
      m.entries[(j - 1) * k + (i - 1)] = vals[at];
      ++at;
    }
  return m;
}

std::string diagram_text(const DDDiagram& d) {
  std::ostringstream os;
  os << "circles " << d.num_circles << "\n";
  for (int c = 0; c < d.num_circles; ++c) {
    os << "circle " << c + 1 << ":";
    for (const DDEndpoint& e : d.circles[c])
      os << " " << e.pair + 1 << "." << e.chord + 1;
    os << "\n";
  }
  for (int p = 0; p < d.degree(); ++p) {
    os << "pair " << p + 1;
    for (int chord = 0; chord < 2; ++chord) {
      if (chord == 1) os << " /";
      for (int c : {d.pairs[p].a, d.pairs[p].b}) {
        const auto& seq = d.circles[c];
        for (std::size_t pos = 0; pos < seq.size(); ++pos)
          if (seq[pos] == DDEndpoint{p, chord})
            os << " " << c + 1 << ":" << pos;
      }
    }
    os << "\n";
  }
  return os.str();
}

DDDiagram read_diagram(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open diagram file: " + path);
  DDDiagram d;
  int declared_circles = -1;
  int max_pair = 0;
  std::vector<std::vector<DDEndpoint>> circles;
  std::string line;
  struct PairLine {
    int id;
    std::vector<std::pair<int, int>> at;  // (circle, pos) x4
  };
  std::vector<PairLine> pair_lines;
  while (std::getline(in, line)) {
    std::stringstream ss(line);
    std::string tag;
    if (!(ss >> tag) || tag[0] == '#') continue;
    if (tag == "circles") {
      ss >> declared_circles;
    } else if (tag == "circle") {
      std::string id_txt;
      ss >> id_txt;  // "<c>:" or "<c>"
      const int c = std::stoi(id_txt);
      if (c < 1) throw std::runtime_error("bad circle id");
      if (static_cast<int>(circles.size()) < c) circles.resize(c);
      std::string label;
      while (ss >> label) {
        const auto dot = label.find('.');
        if (dot == std::string::npos)
          throw std::runtime_error("endpoint label must be <pair>.<chord>");
        const int p = std::stoi(label.substr(0, dot));
        const int chord = std::stoi(label.substr(dot + 1));
        if (p < 1 || (chord != 1 && chord != 2))
          throw std::runtime_error("bad endpoint label: " + label);
        max_pair = std::max(max_pair, p);
        circles[c - 1].push_back(DDEndpoint{p - 1, chord - 1});
      }
    } else if (tag == "pair") {
      PairLine pl;
      ss >> pl.id;
      std::string tok;
      while (ss >> tok) {
        if (tok == "/") continue;
        const auto colon = tok.find(':');
        if (colon == std::string::npos)
          throw std::runtime_error("pair endpoint must be <circle>:<pos>");
        pl.at.emplace_back(std::stoi(tok.substr(0, colon)),
                           std::stoi(tok.substr(colon + 1)));
      }
      if (pl.at.size() != 4)
        throw std::runtime_error("pair line needs two chords x two circles");
      pair_lines.push_back(std::move(pl));
    } else {
      throw std::runtime_error("unknown diagram line: " + tag);
    }
  }
  d.num_circles = declared_circles >= 0 ? declared_circles
                                        : static_cast<int>(circles.size());
  circles.resize(d.num_circles);
  d.circles = std::move(circles);
  // Derive each pair's circle pair from where its endpoints sit.
  d.pairs.assign(max_pair, DDPairCircles{});
  for (int p = 0; p < max_pair; ++p) {
    std::vector<int> on;
    for (int c = 0; c < d.num_circles; ++c)
      for (const DDEndpoint& e : d.circles[c])
        if (e.pair == p && std::find(on.begin(), on.end(), c) == on.end())
          on.push_back(c);
    if (on.size() != 2)
      throw std::runtime_error("pair " + std::to_string(p + 1) +
                               " must touch exactly two circles");
    std::sort(on.begin(), on.end());
    d.pairs[p] = DDPairCircles{on[0], on[1]};
  }
  d.validate();
  // Cross-check any pair lines against the circle sequences.
  for (const PairLine& pl : pair_lines) {
    if (pl.id < 1 || pl.id > max_pair)
      throw std::runtime_error("pair id out of range");
    for (std::size_t q = 0; q < 4; ++q) {
      const auto [c, pos] = pl.at[q];
      const DDEndpoint want{pl.id - 1, static_cast<int>(q / 2)};
      if (c < 1 || c > d.num_circles || pos < 0 ||
          pos >= static_cast<int>(d.circles[c - 1].size()) ||
          !(d.circles[c - 1][pos] == want))
        throw std::runtime_error("pair line disagrees with circle line for "
                                 "pair " +
                                 std::to_string(pl.id));
    }
  }
  return d;
}

EventList read_events(const std::string& path, int strands) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open events file: " + path);
  std::vector<CrossingEvent> events;
  int max_strand = 0;
  std::string line;
  while (std::getline(in, line)) {
    std::stringstream ss(line);
    std::string first;
    if (!(ss >> first) || first[0] == '#') continue;
    CrossingEvent e;
    e.under = std::stoi(first);
    std::string sign;
    if (!(ss >> e.over >> sign))
      throw std::runtime_error("event line needs: under over sign");
    if (sign == "+" || sign == "+1")
      e.sign = 1;
    else if (sign == "-" || sign == "-1")
      e.sign = -1;
    else
      throw std::runtime_error("event sign must be + or -");
    max_strand = std::max({max_strand, e.under, e.over});
    events.push_back(e);
  }
  return EventList(strands > 0 ? strands : max_strand, std::move(events));
}

std::string event_text(const EventList& e) {
  std::ostringstream os;
  for (const CrossingEvent& ev : e.events())
    os << ev.under << " " << ev.over << " " << (ev.sign > 0 ? "+" : "-")
       << "\n";
  return os.str();
}

void emit(bool as_json, const json& j, const std::string& text) {
  if (as_json)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text;
}

std::string istr(const Int& v) { return v.str(); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Milnor mu-bar invariants of string links, finite-type checks "
               "and double dating diagrams"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "emit a JSON report");

  // ---- mu ----------------------------------------------------------------
  auto* mu_cmd = app.add_subcommand("mu", "mu / mu-bar of a word");
  std::string mu_word, mu_indices;
  int mu_strands = 3, mu_of = 0;
  bool mu_raw = false, mu_bar_only = false;
  mu_cmd->add_option("--word", mu_word, "word over x_ij generators")
      ->required();
  mu_cmd->add_option("--strands", mu_strands, "strand count");
  mu_cmd->add_option("--indices", mu_indices, "comma-separated prefix")
      ->required();
  mu_cmd->add_option("--of", mu_of, "target strand")->required();
  mu_cmd->add_flag("--raw", mu_raw, "print the integer mu only");
  mu_cmd->add_flag("--bar", mu_bar_only, "print the residue mod Delta only");

  // ---- events ------------------------------------------------------------
  auto* ev_cmd = app.add_subcommand("events", "raw event-list computations");
  std::string ev_file, ev_indices;
  int ev_strands = 0, ev_of = 0;
  ev_cmd->add_option("--file", ev_file, "one 'under over sign' per line")
      ->required();
  ev_cmd->add_option("--strands", ev_strands, "strand count (default: max)");
  ev_cmd->add_option("--indices", ev_indices, "mu prefix (optional)");
  ev_cmd->add_option("--of", ev_of, "mu target (optional)");

  // ---- typecheck ---------------------------------------------------------
  auto* tc_cmd = app.add_subcommand("typecheck", "exhaustive type checking");
  std::string tc_theory = "clasp:1", tc_indices;
  int tc_of = 0, tc_degree = 2, tc_maxbase = 2, tc_strands = 3,
      tc_maxevents = 6;
  std::uint64_t tc_samples = 0, tc_seed = 1;
  tc_cmd->add_option("--theory", tc_theory, "clasp:<n> or dc")->required();
  tc_cmd->add_option("--indices", tc_indices, "invariant prefix")->required();
  tc_cmd->add_option("--of", tc_of, "invariant target")->required();
  tc_cmd->add_option("--degree", tc_degree, "singular degree");
  tc_cmd->add_option("--max-base-len", tc_maxbase, "clasp base word length")
      ->envname("MUBAR_MAX_BASE_LEN");
  tc_cmd->add_option("--strands", tc_strands, "strand count");
  tc_cmd->add_option("--max-events", tc_maxevents, "dc event budget")
      ->envname("MUBAR_MAX_EVENTS");
  tc_cmd->add_option("--samples", tc_samples, "dc random samples (0=exhaustive)")
      ->envname("MUBAR_SAMPLES");
  tc_cmd->add_option("--seed", tc_seed, "sampling seed")
      ->envname("MUBAR_SEED");

  // ---- witness -----------------------------------------------------------
  auto* wit_cmd = app.add_subcommand("witness", "search for a nonzero case");
  std::string wit_theory = "dc", wit_indices;
  int wit_of = 0, wit_degree = 2, wit_strands = 3, wit_maxevents = 8;
  std::uint64_t wit_samples = 0, wit_seed = 1;
  wit_cmd->add_option("--theory", wit_theory, "dc")->required();
  wit_cmd->add_option("--indices", wit_indices, "invariant prefix")
      ->required();
  wit_cmd->add_option("--of", wit_of, "invariant target")->required();
  wit_cmd->add_option("--degree", wit_degree, "singular degree");
  wit_cmd->add_option("--strands", wit_strands, "strand count");
  wit_cmd->add_option("--max-events", wit_maxevents, "event budget")
      ->envname("MUBAR_MAX_EVENTS");
  wit_cmd->add_option("--samples", wit_samples, "random samples")
      ->envname("MUBAR_SAMPLES");
  wit_cmd->add_option("--seed", wit_seed, "sampling seed")
      ->envname("MUBAR_SEED");

  // ---- census ------------------------------------------------------------
  auto* cen_cmd = app.add_subcommand("census", "degree-3 DD diagram census");
  int cen_degree = 3, cen_strands = 3;
  bool cen_list = false;
  cen_cmd->add_option("--degree", cen_degree, "diagram degree (3)");
  cen_cmd->add_option("--strands", cen_strands, "circle count (3)");
  cen_cmd->add_flag("--list", cen_list, "print every orbit representative");

  // ---- ddeval ------------------------------------------------------------
  auto* dd_cmd = app.add_subcommand("ddeval", "evaluate W on a DD diagram");
  std::string dd_file, dd_class = "split", dd_indices;
  int dd_of = 0, dd_samples = 3;
  std::uint64_t dd_seed = 1;
  dd_cmd->add_option("--diagram", dd_file, "diagram file")->required();
  dd_cmd->add_option("--class", dd_class, "'split' or l12,l13,...");
  dd_cmd->add_option("--indices", dd_indices, "invariant prefix")->required();
  dd_cmd->add_option("--of", dd_of, "invariant target")->required();
  dd_cmd->add_option("--samples", dd_samples, "realization samples (>=3)")
      ->envname("MUBAR_SAMPLES");
  dd_cmd->add_option("--seed", dd_seed, "noise seed")->envname("MUBAR_SEED");

  // ---- collect -----------------------------------------------------------
  auto* col_cmd = app.add_subcommand("collect", "Hall collection of a word");
  std::string col_word;
  int col_class = 3;
  col_cmd->add_option("--word", col_word, "word to collect")->required();
  col_cmd->add_option("--class", col_class, "nilpotency class");

  // ---- decompose ---------------------------------------------------------
  auto* dec_cmd =
      app.add_subcommand("decompose", "split into simple commutators");
  std::string dec_word;
  int dec_level = 2, dec_max = 5;
  dec_cmd->add_option("--word", dec_word, "word over x_i,target generators")
      ->required();
  dec_cmd->add_option("--level", dec_level, "starting commutator depth");
  dec_cmd->add_option("--max-level", dec_max, "deepest level to peel");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (mu_cmd->parsed()) {
      const GroupWord w = parse_group_word(mu_word);
      const EventList link = compile(w, mu_strands);
      const MuIndex idx = make_index(mu_indices, mu_of);
      const Int raw = mu(link, idx);
      const MuBarValue mb = mu_bar(link, idx);
      json j{{"command", "mu"},       {"word", w.str()},
             {"strands", mu_strands}, {"indices", parse_indices(mu_indices)},
             {"of", mu_of},           {"mu", istr(raw)},
             {"delta", istr(mb.modulus)}, {"mubar", istr(mb.residue)}};
      std::ostringstream os;
      if (mu_raw)
        os << istr(raw) << "\n";
      else if (mu_bar_only)
        os << istr(mb.residue) << " (mod " << istr(mb.modulus) << ")\n";
      else
        os << "mu = " << istr(raw) << "\ndelta = " << istr(mb.modulus)
           << "\nmubar = " << istr(mb.residue) << " (mod " << istr(mb.modulus)
           << ")\n";
      emit(as_json, j, os.str());
      return 0;
    }

    if (ev_cmd->parsed()) {
      const EventList link = read_events(ev_file, ev_strands);
      const LinkingMatrix lk = linking_matrix(link);
      json j{{"command", "events"}, {"strands", link.num_strands()}};
      std::ostringstream os;
      os << "strands = " << link.num_strands() << "\n";
      json rows = json::array();
      os << "linking matrix:\n";
      for (int i = 1; i <= lk.k; ++i) {
        json row = json::array();
        os << " ";
        for (int jj = 1; jj <= lk.k; ++jj) {
          row.push_back(lk.at(i, jj));
          os << " " << lk.at(i, jj);
        }
        rows.push_back(row);
        os << "\n";
      }
      j["linking_matrix"] = rows;
      if (!ev_indices.empty()) {
        const MuIndex idx = make_index(ev_indices, ev_of);
        const Int raw = mu(link, idx);
        const MuBarValue mb = mu_bar(link, idx);
        j["mu"] = istr(raw);
        j["delta"] = istr(mb.modulus);
        j["mubar"] = istr(mb.residue);
        os << "mu = " << istr(raw) << "\ndelta = " << istr(mb.modulus)
           << "\nmubar = " << istr(mb.residue) << "\n";
      }
      emit(as_json, j, os.str());
      return 0;
    }

    if (tc_cmd->parsed()) {
      const MuIndex idx = make_index(tc_indices, tc_of);
      std::vector<int> comps = idx.prefix;
      comps.push_back(idx.target);
      std::sort(comps.begin(), comps.end());
      json j{{"command", "typecheck"}, {"theory", tc_theory},
             {"degree", tc_degree},    {"strands", tc_strands},
             {"indices", idx.prefix},  {"of", idx.target}};
      std::ostringstream os;
      if (tc_theory == "dc") {
        DCCheckBudget budget;
        budget.num_strands = tc_strands;
        budget.max_events = tc_maxevents;
        budget.samples = tc_samples;
        budget.seed = tc_seed;
        const DCCheckReport rep = type_check_dc(idx, tc_degree, budget);
        j["cases"] = rep.cases;
        j["all_zero"] = rep.all_zero;
        j["counterexamples"] = rep.counterexamples.size();
        os << "theory=dc degree=" << tc_degree << " cases=" << rep.cases
           << " all_zero=" << (rep.all_zero ? "yes" : "no") << "\n";
      } else if (tc_theory.rfind("clasp:", 0) == 0) {
        const int depth = std::stoi(tc_theory.substr(6));
        ClaspCheckBudget budget;
        budget.num_strands = tc_strands;
        budget.max_base_letters = tc_maxbase;
        for (int t : comps) {
          std::vector<int> rest;
          for (int c : comps)
            if (c != t) rest.push_back(c);
          if (static_cast<int>(rest.size()) < depth) continue;
          std::vector<bool> pick(rest.size(), false);
          std::fill(pick.end() - depth, pick.end(), true);
          do {
            std::vector<int> lower;
            for (std::size_t q = 0; q < rest.size(); ++q)
              if (pick[q]) lower.push_back(rest[q]);
            const auto specs =
                enumerate_simple_specs(lower, t, true, true);
            budget.labels.insert(budget.labels.end(), specs.begin(),
                                 specs.end());
          } while (std::next_permutation(pick.begin(), pick.end()));
        }
        const ClaspCheckReport rep = type_check_clasp(idx, tc_degree, budget);
        j["labels"] = budget.labels.size();
        j["cases"] = rep.cases;
        j["all_zero"] = rep.all_zero;
        j["all_unit"] = rep.all_unit;
        os << "theory=" << tc_theory << " degree=" << tc_degree
           << " labels=" << budget.labels.size() << " cases=" << rep.cases
           << " all_zero=" << (rep.all_zero ? "yes" : "no")
           << " all_unit=" << (rep.all_unit ? "yes" : "no") << "\n";
      } else {
        throw std::invalid_argument("unknown theory: " + tc_theory);
      }
      emit(as_json, j, os.str());
      return 0;
    }

    if (wit_cmd->parsed()) {
      if (wit_theory != "dc")
        throw std::invalid_argument("witness search supports --theory dc");
      const MuIndex idx = make_index(wit_indices, wit_of);
      DCCheckBudget budget;
      budget.num_strands = wit_strands;
      budget.max_events = wit_maxevents;
      budget.samples = wit_samples;
      budget.seed = wit_seed;
      const auto found = find_type_witness_dc(idx, wit_degree, budget);
      json j{{"command", "witness"}, {"found", found.has_value()}};
      std::ostringstream os;
      if (found) {
        const Int value = extended_mu_dc(*found, idx);
        j["extended_mu"] = istr(value);
        json pairs = json::array();
        for (const DCPair& p : found->pairs)
          pairs.push_back({p.first, p.second});
        j["pairs"] = pairs;
        j["events"] = event_text(found->base);
        os << "witness found, extended mu = " << istr(value) << "\n";
        for (const DCPair& p : found->pairs)
          os << "pair " << p.first << " " << p.second << "\n";
        os << event_text(found->base);
      } else {
        os << "none\n";
      }
      emit(as_json, j, os.str());
      return 0;
    }

    if (cen_cmd->parsed()) {
      if (cen_degree != 3 || cen_strands != 3)
        throw std::invalid_argument(
            "the census is implemented for degree 3 on 3 circles");
      const CensusResult c = census_degree3();
      int one_term = 0;
      for (const auto& o : c.orbits) one_term += one_term_test(o.front());
      json j{{"command", "census"},
             {"labeled", c.labeled},
             {"naive", c.naive_quotient},
             {"canonical", c.orbit_count()},
             {"one_term", one_term}};
      std::ostringstream os;
      os << "labeled=" << c.labeled << " naive=" << c.naive_quotient
         << " canonical=" << c.orbit_count() << "\n";
      json orbits = json::array();
      for (std::size_t i = 0; i < c.orbits.size(); ++i) {
        const DDDiagram& rep = c.orbits[i].front();
        orbits.push_back({{"orbit", i + 1},
                          {"size", c.orbits[i].size()},
                          {"one_term", one_term_test(rep)},
                          {"diagram", diagram_text(rep)}});
        if (cen_list)
          os << "# orbit " << i + 1 << " size " << c.orbits[i].size()
             << " one_term " << (one_term_test(rep) ? "yes" : "no") << "\n"
             << diagram_text(rep);
      }
      j["orbits"] = orbits;
      emit(as_json, j, os.str());
      return 0;
    }

    if (dd_cmd->parsed()) {
      const DDDiagram d = read_diagram(dd_file);
      const MuIndex idx = make_index(dd_indices, dd_of);
      const LinkingMatrix cls = parse_class(dd_class, d.num_circles);
      const Int w = evaluate_W(d, idx, cls, dd_samples, dd_seed);
      json j{{"command", "ddeval"},
             {"degree", d.degree()},
             {"one_term", one_term_test(d)},
             {"W", istr(w)}};
      std::ostringstream os;
      os << "W = " << istr(w) << "\n";
      emit(as_json, j, os.str());
      return 0;
    }

    if (col_cmd->parsed()) {
      const GroupWord w = parse_group_word(col_word);
      const auto factors = hall_collect(w, col_class);
      json j{{"command", "collect"}, {"word", w.str()}, {"class", col_class}};
      json fs = json::array();
      std::ostringstream os;
      for (const HallFactor& f : factors) {
        fs.push_back({{"name", f.name},
                      {"weight", f.weight},
                      {"exponent", f.exponent}});
        os << f.name << " weight " << f.weight << " exponent " << f.exponent
           << "\n";
      }
      j["factors"] = fs;
      emit(as_json, j, os.str());
      return 0;
    }

    if (dec_cmd->parsed()) {
      const GroupWord w = parse_group_word(dec_word);
      const Decomposition dec = decompose_to_simple(w, dec_level, dec_max);
      json j{{"command", "decompose"},
             {"word", w.str()},
             {"level", dec_level},
             {"ok", dec.ok},
             {"achieved_level", dec.achieved_level},
             {"residual", dec.residual.str()}};
      json specs = json::array();
      std::ostringstream os;
      for (const SimpleCommutatorSpec& s : dec.specs) specs.push_back(s.str());
      j["specs"] = specs;
      os << (dec.ok ? "ok" : "FAILED") << " achieved_level "
         << dec.achieved_level << "\n";
      for (const SimpleCommutatorSpec& s : dec.specs) os << s.str() << "\n";
      os << "residual " << dec.residual.str() << "\n";
      emit(as_json, j, os.str());
      return dec.ok ? 0 : 1;
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
