#include "ymflow/checkpoint.hpp"

#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace ymflow {

static_assert(std::endian::native == std::endian::little,
              "checkpoint I/O assumes a little-endian host");

namespace {

constexpr char kMagic[8] = {'Y', 'M', 'F', 'L', 'O', 'W', 'C', 'K'};

class Writer {
 public:
  explicit Writer(std::ostream& out) : out_(out) {}
  template <class T>
  void put(const T& v) {
    out_.write(reinterpret_cast<const char*>(&v), sizeof(T));
  }
  void put_string(const std::string& s) {
    put(static_cast<std::uint64_t>(s.size()));
    out_.write(s.data(), static_cast<std::streamsize>(s.size()));
  }

 private:
  std::ostream& out_;
};

class Reader {
 public:
  Reader(std::istream& in, std::string path) : in_(in), path_(std::move(path)) {}
  template <class T>
  T get() {
    T v{};
    in_.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!in_) throw IoError(path_ + ": truncated checkpoint");
    return v;
  }
  std::string get_string() {
    const auto n = get<std::uint64_t>();
    if (n > (std::uint64_t{1} << 26)) throw IoError(path_ + ": corrupt string length");
    std::string s(n, '\0');
    in_.read(s.data(), static_cast<std::streamsize>(n));
    if (!in_) throw IoError(path_ + ": truncated checkpoint");
    return s;
  }

 private:
  std::istream& in_;
  std::string path_;
};

}  // namespace

void write_checkpoint(const std::filesystem::path& path, const Checkpoint& ck) {
  const FlowState& s = ck.state;
  const Lattice& l = s.field.lattice();
  const Grid& g = l.grid();
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    Writer w(out);
    out.write(kMagic, sizeof kMagic);
    w.put(kCheckpointVersion);
    w.put(ck.config_hash);
    w.put_string(ck.config_text);
    for (int a = 0; a < 3; ++a) w.put(static_cast<std::int32_t>(g.dims[a]));
    w.put(g.h);
    w.put(static_cast<std::uint8_t>(g.domain));
    w.put(static_cast<std::uint8_t>(l.bc()));
    w.put(static_cast<std::uint8_t>(l.group().id()));
    w.put(static_cast<std::uint32_t>(l.group().matrix_dim()));
    w.put(static_cast<std::uint32_t>(l.adim()));
    w.put(static_cast<std::uint8_t>(s.mode));
    w.put(static_cast<std::uint8_t>(ck.kind));
    w.put(s.t);
    w.put(ck.dt);
    w.put(s.steps);
    w.put(s.backtracks);
    const std::size_t sites = l.sites();
    const int ad = l.adim();
    w.put(static_cast<std::uint64_t>(s.field.data().size()));
    for (std::size_t site = 0; site < sites; ++site)
      for (int c = 0; c < 3; ++c)
        for (int k = 0; k < ad; ++k) w.put(s.field.at(c, site)[k]);
    w.put(static_cast<std::uint8_t>(s.g.has_value()));
    if (s.g) {
      for (std::size_t site = 0; site < sites; ++site) {
        const GroupMatrix& m = (*s.g)[site];
        for (int i = 0; i < m.rows(); ++i)
          for (int j = 0; j < m.cols(); ++j) {
            w.put(m(i, j).real());
            w.put(m(i, j).imag());
          }
      }
    }
    if (!out) throw IoError("failed writing " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

Checkpoint read_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open checkpoint " + path.string());
  Reader r(in, path.string());
  char magic[8];
  in.read(magic, sizeof magic);
  if (!in || std::memcmp(magic, kMagic, sizeof kMagic) != 0) {
    throw IoError(path.string() + ": not a checkpoint file");
  }
  const auto version = r.get<std::uint32_t>();
  if (version != kCheckpointVersion) {
    throw IoError(path.string() + ": unsupported checkpoint version " +
                  std::to_string(version));
  }
  Checkpoint ck;
  ck.config_hash = r.get<std::uint64_t>();
  ck.config_text = r.get_string();
  std::array<int, 3> dims{};
  for (int a = 0; a < 3; ++a) dims[a] = r.get<std::int32_t>();
  const double h = r.get<double>();
  const auto domain = static_cast<DomainKind>(r.get<std::uint8_t>());
  const auto bc = static_cast<BoundaryKind>(r.get<std::uint8_t>());
  const auto group = static_cast<GroupId>(r.get<std::uint8_t>());
  const auto mdim = r.get<std::uint32_t>();
  const auto adim = r.get<std::uint32_t>();
  const GroupSpec& spec = GroupSpec::get(group);
  if (mdim != static_cast<std::uint32_t>(spec.matrix_dim()) ||
      adim != static_cast<std::uint32_t>(spec.algebra_dim())) {
    throw IoError(path.string() + ": group header mismatch");
  }
  const LatticePtr lat = Lattice::make(Grid::make(dims, h, domain), bc, group);
  ck.state.mode = static_cast<FlowMode>(r.get<std::uint8_t>());
  ck.kind = static_cast<FieldKind>(r.get<std::uint8_t>());
  ck.state.t = r.get<double>();
  ck.dt = r.get<double>();
  ck.state.steps = r.get<std::uint64_t>();
  ck.state.backtracks = r.get<std::uint64_t>();
  const auto n = r.get<std::uint64_t>();
  ConnectionField f(lat);
  if (n != f.data().size()) throw IoError(path.string() + ": field size mismatch");
  for (std::size_t site = 0; site < lat->sites(); ++site)
    for (int c = 0; c < 3; ++c)
      for (std::uint32_t k = 0; k < adim; ++k) f.at(c, site)[k] = r.get<double>();
  ck.state.field = std::move(f);
  if (r.get<std::uint8_t>()) {
    GaugeField g = GaugeField::identity(lat);
    for (std::size_t site = 0; site < lat->sites(); ++site) {
      GroupMatrix& m = g[site];
      for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) {
          const double re = r.get<double>();
          const double im = r.get<double>();
          m(i, j) = Complex(re, im);
        }
    }
    ck.state.g = std::move(g);
  }
  return ck;
}

void write_series(const std::filesystem::path& path, const ObservableSeries& s) {
  std::FILE* f = std::fopen(path.string().c_str(), "w");
  if (!f) throw IoError("cannot write " + path.string());
  std::fprintf(f, "t,value\n");
  for (std::size_t k = 0; k < s.t.size(); ++k) {
    std::fprintf(f, "%.17g,%.17g\n", s.t[k], s.value[k]);
  }
  if (std::fclose(f) != 0) throw IoError("failed writing " + path.string());
}

ObservableSeries read_series(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open series " + path.string());
  ObservableSeries s;
  s.name = path.stem().string();
  std::string line;
  std::getline(in, line);
  if (line != "t,value") throw IoError(path.string() + ": missing t,value header");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw IoError(path.string() + ": bad row");
    s.t.push_back(std::stod(line.substr(0, comma)));
    s.value.push_back(std::stod(line.substr(comma + 1)));
  }
  return s;
}

std::vector<Loop> read_loops(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open loop file " + path.string());
  std::vector<Loop> loops;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<double> v;
    for (double x; ls >> x;) v.push_back(x);
    if (v.empty()) continue;
    if (v.size() < 7 || (v.size() - 1) % 3 != 0) {
      throw IoError(path.string() + ":" + std::to_string(lineno) +
                    ": expected delta followed by xyz triples");
    }
    Loop l;
    l.subdiv = v[0];
    for (std::size_t i = 1; i < v.size(); i += 3) {
      l.vertices.emplace_back(v[i], v[i + 1], v[i + 2]);
    }
    loops.push_back(std::move(l));
  }
  return loops;
}

}  // namespace ymflow
