#include "crn/event_log.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace crn {

namespace {

constexpr const char* kEventKindNames[] = {"cleave",  "bind",      "unbind",   "condense",
                                           "energize", "influx",    "outflux",  "ec_influx",
                                           "ec_decay", "deenergize"};

std::string entity_token(const EntityRef& e) {
  switch (e.type) {
    case EntityRef::Type::kSpecies:
      return std::to_string(e.a);
    case EntityRef::Type::kComplex: {
      std::string t = "x" + std::to_string(e.a) + "~" + std::to_string(e.b);
      if (e.energized) t += "+";
      return t;
    }
    case EntityRef::Type::kEc:
      return "E";
  }
  return "?";
}

std::string products_field(const std::vector<EntityCount>& products) {
  std::string out;
  for (size_t i = 0; i < products.size(); ++i) {
    if (i) out += ';';
    out += entity_token(products[i].entity);
    if (products[i].n != 1) {
      out += '*';
      out += std::to_string(products[i].n);
    }
  }
  return out;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> fields;
  size_t start = 0;
  while (true) {
    size_t pos = line.find(sep, start);
    if (pos == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return fields;
}

void expect_header(std::ifstream& in, const std::string& magic, const std::filesystem::path& path) {
  std::string line;
  if (!std::getline(in, line) || line.rfind(magic, 0) != 0) {
    throw FormatError("bad or missing schema header in " + path.string() + " (want \"" + magic +
                      "\")");
  }
}

EventKind parse_kind(const std::string& name, const std::filesystem::path& path) {
  for (size_t i = 0; i < std::size(kEventKindNames); ++i) {
    if (name == kEventKindNames[i]) return static_cast<EventKind>(i);
  }
  throw FormatError("unknown event kind \"" + name + "\" in " + path.string());
}

double parse_double(const std::string& s) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc()) throw FormatError("bad number \"" + s + "\"");
  return v;
}

int64_t parse_i64(const std::string& s) {
  int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc()) throw FormatError("bad integer \"" + s + "\"");
  return v;
}

}  // namespace

const char* event_kind_name(EventKind kind) {
  return kEventKindNames[static_cast<size_t>(kind)];
}

int64_t Snapshot::total_molecules() const {
  int64_t total = 0;
  for (const Row& r : rows) total += r.count;
  return total;
}

int64_t Snapshot::count_of(SpeciesId id) const {
  for (const Row& r : rows) {
    if (r.species == id) return r.count;
  }
  return 0;
}

std::string format_double(double value) {
  char buf[40];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

void write_events_csv(const std::filesystem::path& path, const std::vector<Event>& events,
                      const Chemistry& chemistry, const SeedPair& seeds) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot open " + path.string() + " for writing");
  out << "# crnsim-events v1 chem_seed=" << seeds.chemistry_seed
      << " dyn_seed=" << seeds.dynamics_seed << "\n";
  out << "time,kind,schema_key,catalyst_id,product_ids,new_species\n";
  for (const Event& ev : events) {
    out << format_double(ev.time) << ',' << event_kind_name(ev.kind) << ',';
    if (ev.schema >= 0) {
      out << schema_key(chemistry.species(), chemistry.reactions()[static_cast<size_t>(ev.schema)]);
    }
    out << ',';
    if (ev.catalyst != kNoSpecies) out << ev.catalyst;
    out << ',' << products_field(ev.products) << ',' << (ev.new_species ? 1 : 0) << "\n";
  }
  if (!out) throw FormatError("write failed for " + path.string());
}

void write_snapshots_csv(const std::filesystem::path& path, const std::vector<Snapshot>& snapshots,
                         const SeedPair& seeds) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot open " + path.string() + " for writing");
  out << "# crnsim-snapshots v1 chem_seed=" << seeds.chemistry_seed
      << " dyn_seed=" << seeds.dynamics_seed << "\n";
  out << "window,species_id,count,energized\n";
  for (const Snapshot& snap : snapshots) {
    if (snap.rows.empty()) {
      // Sentinel keeps empty boundaries distinguishable from absent ones.
      out << snap.window_index << ",-1,0,0\n";
      continue;
    }
    for (const auto& row : snap.rows) {
      out << snap.window_index << ',' << row.species << ',' << row.count << ',' << row.energized
          << "\n";
    }
  }
  if (!out) throw FormatError("write failed for " + path.string());
}

void write_species_csv(const std::filesystem::path& path, const SpeciesTable& table) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot open " + path.string() + " for writing");
  out << "# crnsim-species v1\n";
  out << "id,sequence\n";
  for (SpeciesId id = 0; id < table.size(); ++id) {
    out << id << ',' << table.sequence(id) << "\n";
  }
  if (!out) throw FormatError("write failed for " + path.string());
}

std::vector<ParsedEvent> read_events_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  expect_header(in, "# crnsim-events v1", path);
  std::string line;
  std::getline(in, line);  // column header
  std::vector<ParsedEvent> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto fields = split(line, ',');
    if (fields.size() != 6) throw FormatError("malformed event row in " + path.string());
    ParsedEvent ev;
    ev.time = parse_double(fields[0]);
    ev.kind = parse_kind(fields[1], path);
    ev.schema_key = fields[2];
    ev.catalyst = fields[3].empty() ? kNoSpecies : static_cast<SpeciesId>(parse_i64(fields[3]));
    if (!fields[4].empty()) {
      for (const std::string& token : split(fields[4], ';')) {
        std::string body = token;
        int64_t n = 1;
        if (size_t star = body.find('*'); star != std::string::npos) {
          n = parse_i64(body.substr(star + 1));
          body = body.substr(0, star);
        }
        if (body.empty() || body == "E" || body[0] == 'x') continue;  // non-species entity
        ev.species_products.emplace_back(static_cast<SpeciesId>(parse_i64(body)), n);
      }
    }
    ev.new_species = fields[5] == "1";
    out.push_back(std::move(ev));
  }
  return out;
}

std::vector<Snapshot> read_snapshots_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  expect_header(in, "# crnsim-snapshots v1", path);
  std::string line;
  std::getline(in, line);
  std::vector<Snapshot> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto fields = split(line, ',');
    if (fields.size() != 4) throw FormatError("malformed snapshot row in " + path.string());
    int32_t window = static_cast<int32_t>(parse_i64(fields[0]));
    if (out.empty() || out.back().window_index != window) {
      Snapshot snap;
      snap.window_index = window;
      out.push_back(std::move(snap));
    }
    SpeciesId id = static_cast<SpeciesId>(parse_i64(fields[1]));
    if (id == kNoSpecies) continue;  // sentinel row of an empty boundary
    out.back().rows.push_back({id, parse_i64(fields[2]), parse_i64(fields[3])});
  }
  return out;
}

std::vector<std::string> read_species_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  expect_header(in, "# crnsim-species v1", path);
  std::string line;
  std::getline(in, line);
  std::vector<std::string> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto fields = split(line, ',');
    if (fields.size() != 2) throw FormatError("malformed species row in " + path.string());
    SpeciesId id = static_cast<SpeciesId>(parse_i64(fields[0]));
    if (id != static_cast<SpeciesId>(out.size())) {
      throw FormatError("species ids must be dense and ascending in " + path.string());
    }
    out.push_back(fields[1]);
  }
  return out;
}

}  // namespace crn
