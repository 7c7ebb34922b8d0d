#include "shieldlab/fairness/io.hpp"

#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace shieldlab::fairness {

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ls(line);
  while (std::getline(ls, field, ',')) out.push_back(field);
  return out;
}

constexpr char kMagic[4] = {'F', 'S', 'B', '1'};

template <typename T>
void put(std::ostream& out, const T& value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T get(std::istream& in) {
  T value;
  in.read(reinterpret_cast<char*>(&value), sizeof(T));
  if (!in) throw ParseError("truncated shield binary");
  return value;
}

}  // namespace

InputDistribution read_distribution_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty distribution file");
  const std::vector<std::string> header = split_csv(line);
  if (header.size() < 4 || header[0] != "group")
    throw ParseError("expected header group,recommendation,cost,probability");
  const bool with_z = header.size() >= 5 && header[4] == "p_z1";

  std::vector<InputAtom> atoms;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> f = split_csv(line);
    if (f.size() < 4) throw ParseError("short distribution row: " + line);
    InputAtom atom;
    if (f[0] == "a")
      atom.group = 0;
    else if (f[0] == "b")
      atom.group = 1;
    else
      throw ParseError("group must be `a` or `b`, got " + f[0]);
    atom.rec = std::stoi(f[1]);
    atom.cost = std::stod(f[2]);
    atom.prob = std::stod(f[3]);
    if (with_z && f.size() >= 5 && !f[4].empty()) atom.p_z1 = std::stod(f[4]);
    atoms.push_back(atom);
  }
  return InputDistribution(std::move(atoms));
}

InputDistribution read_distribution_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open distribution file " + path);
  return read_distribution_csv(in);
}

void write_distribution_csv(std::ostream& out, const InputDistribution& dist) {
  out << "group,recommendation,cost,probability,p_z1\n";
  out << std::setprecision(17);
  for (const InputAtom& x : dist.atoms()) {
    out << (x.group == 0 ? 'a' : 'b') << ',' << x.rec << ',' << x.cost << ','
        << x.prob << ',';
    if (x.p_z1 >= 0) out << x.p_z1;
    out << '\n';
  }
}

void write_distribution_csv_file(const std::string& path,
                                 const InputDistribution& dist) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write distribution file " + path);
  write_distribution_csv(out, dist);
}

void write_shield_binary(std::ostream& out, const FairnessShieldTable& table) {
  out.write(kMagic, 4);
  put<std::int32_t>(out, static_cast<std::int32_t>(table.property().kind));
  put<double>(out, table.property().kappa);
  put<std::int32_t>(out, table.horizon());
  put<std::int32_t>(out, static_cast<std::int32_t>(table.variant()));
  put<double>(out, table.welfare_lo);
  put<double>(out, table.welfare_hi);
  put<std::int32_t>(out, table.balance_n);
  put<std::int32_t>(out, table.prefix.a);
  put<std::int32_t>(out, table.prefix.a1);
  put<std::int32_t>(out, table.prefix.b);
  put<std::int32_t>(out, table.prefix.b1);
  put<std::int32_t>(out, table.prefix.z0);
  put<double>(out, table.prefix_bias);
  put<double>(out, table.root_value());

  const auto& atoms = table.distribution().atoms();
  put<std::int32_t>(out, static_cast<std::int32_t>(atoms.size()));
  for (const InputAtom& x : atoms) {
    put<std::int32_t>(out, x.group);
    put<std::int32_t>(out, x.rec);
    put<double>(out, x.cost);
    put<double>(out, x.prob);
    put<double>(out, x.p_z1);
  }

  auto dump = [&out](const std::vector<std::vector<std::uint64_t>>& layers) {
    put<std::int32_t>(out, static_cast<std::int32_t>(layers.size()));
    for (const auto& layer : layers) {
      put<std::int64_t>(out, static_cast<std::int64_t>(layer.size()));
      out.write(reinterpret_cast<const char*>(layer.data()),
                static_cast<std::streamsize>(layer.size() * 8));
    }
  };
  dump(table.raw_decisions());
  dump(table.raw_infeasible());
}

void write_shield_binary_file(const std::string& path,
                              const FairnessShieldTable& table) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write shield file " + path);
  write_shield_binary(out, table);
}

FairnessShieldTable read_shield_binary(std::istream& in) {
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kMagic, 4) != 0)
    throw ParseError("not a shield binary (bad magic)");
  FairnessProperty prop;
  prop.kind = static_cast<FairnessKind>(get<std::int32_t>(in));
  prop.kappa = get<double>(in);
  const int horizon = get<std::int32_t>(in);
  const auto variant = static_cast<ShieldVariant>(get<std::int32_t>(in));
  const double lo = get<double>(in);
  const double hi = get<double>(in);
  const int balance_n = get<std::int32_t>(in);
  Counters prefix;
  prefix.a = get<std::int32_t>(in);
  prefix.a1 = get<std::int32_t>(in);
  prefix.b = get<std::int32_t>(in);
  prefix.b1 = get<std::int32_t>(in);
  prefix.z0 = get<std::int32_t>(in);
  const double prefix_bias = get<double>(in);
  const double root = get<double>(in);

  const int atom_count = get<std::int32_t>(in);
  std::vector<InputAtom> atoms;
  for (int i = 0; i < atom_count; ++i) {
    InputAtom x;
    x.group = get<std::int32_t>(in);
    x.rec = get<std::int32_t>(in);
    x.cost = get<double>(in);
    x.prob = get<double>(in);
    x.p_z1 = get<double>(in);
    atoms.push_back(x);
  }

  FairnessShieldTable table(prop, horizon, InputDistribution(std::move(atoms)),
                            variant);
  table.welfare_lo = lo;
  table.welfare_hi = hi;
  table.balance_n = balance_n;
  table.prefix = prefix;
  table.prefix_bias = prefix_bias;
  table.reserve_layers(false);
  table.set_root(root);

  auto load = [&in](std::vector<std::vector<std::uint64_t>>& layers) {
    const int count = get<std::int32_t>(in);
    if (count != static_cast<int>(layers.size()))
      throw ParseError("shield binary layer count mismatch");
    for (auto& layer : layers) {
      const auto words = static_cast<std::size_t>(get<std::int64_t>(in));
      if (words != layer.size())
        throw ParseError("shield binary layer size mismatch");
      in.read(reinterpret_cast<char*>(layer.data()),
              static_cast<std::streamsize>(words * 8));
      if (!in) throw ParseError("truncated shield binary");
    }
  };
  load(table.mutable_decisions());
  load(table.mutable_infeasible());
  return table;
}

FairnessShieldTable read_shield_binary_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open shield file " + path);
  return read_shield_binary(in);
}

void write_shield_csv(std::ostream& out, const FairnessShieldTable& table) {
  out << "time,a,a1,b,b1,z0,group,rec,cost,decision\n";
  out << std::setprecision(17);
  const CounterIndexer& idx = table.indexer();
  for (int t = 0; t < table.horizon(); ++t) {
    for (std::size_t cell = 0; cell < idx.layer_size(t); ++cell) {
      const Counters c = idx.decode(t, cell);
      for (int i = 0; i < table.distribution().size(); ++i) {
        const InputAtom& x = table.distribution().atom(i);
        out << t << ',' << c.a << ',' << c.a1 << ',' << c.b << ',' << c.b1
            << ',' << c.z0 << ',' << (x.group == 0 ? 'a' : 'b') << ','
            << x.rec << ',' << x.cost << ',' << table.decide(t, c, i) << '\n';
      }
    }
  }
}

void write_shield_csv_file(const std::string& path,
                           const FairnessShieldTable& table) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write shield CSV " + path);
  write_shield_csv(out, table);
}

void write_periodic_csv(std::ostream& out, const PeriodicRun& run) {
  out << "t,group,rec,cost,decision,bias\n";
  out << std::setprecision(17);
  for (const PeriodicStep& s : run.steps)
    out << s.t << ',' << (s.group == 0 ? 'a' : 'b') << ',' << s.rec << ','
        << s.cost << ',' << s.decision << ',' << s.cumulative_bias << '\n';
}

void write_periodic_csv_file(const std::string& path, const PeriodicRun& run) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write periodic CSV " + path);
  write_periodic_csv(out, run);
}

}  // namespace shieldlab::fairness
