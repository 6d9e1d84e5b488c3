#include "hinwalk/snapshot.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include "hinwalk/rng.hpp"

namespace hinwalk {

namespace {

constexpr char kMagic[8] = {'H', 'I', 'N', 'S', 'N', 'A', 'P', '1'};
constexpr std::uint32_t kVersion = 1;

static_assert(std::endian::native == std::endian::little,
              "snapshot writer assumes a little-endian host");

template <typename T>
void put(std::ostream& out, T value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T get(std::istream& in) {
  T value{};
  in.read(reinterpret_cast<char*>(&value), sizeof(T));
  if (!in) throw Error("snapshot: unexpected end of file");
  return value;
}

void put_string(std::ostream& out, std::string_view s) {
  put<std::uint32_t>(out, static_cast<std::uint32_t>(s.size()));
  out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

std::string get_string(std::istream& in) {
  const auto len = get<std::uint32_t>(in);
  std::string s(len, '\0');
  in.read(s.data(), len);
  if (!in) throw Error("snapshot: unexpected end of file");
  return s;
}

}  // namespace

void write_snapshot(const Hin& hin, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write file '" + path.string() + "'");
  out.write(kMagic, sizeof(kMagic));
  put<std::uint32_t>(out, kVersion);
  put_string(out, hin.dataset());

  put<std::uint32_t>(out, static_cast<std::uint32_t>(hin.group_names().size()));
  for (const std::string& name : hin.group_names()) {
    const ObjectGroup& g = hin.group(name);
    put_string(out, g.name());
    put<std::uint64_t>(out, g.size());
    for (const std::string& label : g.labels()) put_string(out, label);
  }

  put<std::uint32_t>(out, static_cast<std::uint32_t>(hin.relation_names().size()));
  for (const std::string& name : hin.relation_names()) {
    const LinkGroup& lg = hin.relation(name);
    put_string(out, lg.name());
    put_string(out, lg.source_group());
    put_string(out, lg.target_group());
    put<std::uint64_t>(out, lg.size());
    for (const Edge& e : lg.edges()) {
      put<std::uint32_t>(out, e.src);
      put<std::uint32_t>(out, e.dst);
    }
    put<std::uint8_t>(out, lg.has_ratings() ? 1 : 0);
    if (lg.has_ratings()) {
      out.write(reinterpret_cast<const char*>(lg.ratings().data()),
                static_cast<std::streamsize>(lg.ratings().size()));
    }
  }
  if (!out) throw Error("short write to '" + path.string() + "'");
}

Hin read_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open file '" + path.string() + "'");
  char magic[8];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw Error("'" + path.string() + "' is not a network snapshot");
  }
  const auto version = get<std::uint32_t>(in);
  if (version != kVersion) {
    throw Error("snapshot version " + std::to_string(version) + " not supported");
  }
  const std::string dataset = get_string(in);

  std::vector<ObjectGroup> groups;
  const auto group_count = get<std::uint32_t>(in);
  for (std::uint32_t g = 0; g < group_count; ++g) {
    std::string name = get_string(in);
    const auto n = get<std::uint64_t>(in);
    std::vector<std::string> labels;
    labels.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) labels.push_back(get_string(in));
    groups.emplace_back(std::move(name), std::move(labels));
  }

  std::vector<LinkGroup> links;
  const auto rel_count = get<std::uint32_t>(in);
  for (std::uint32_t r = 0; r < rel_count; ++r) {
    std::string name = get_string(in);
    std::string src = get_string(in);
    std::string dst = get_string(in);
    const auto m = get<std::uint64_t>(in);
    std::vector<Edge> edges;
    edges.reserve(m);
    for (std::uint64_t i = 0; i < m; ++i) {
      const auto a = get<std::uint32_t>(in);
      const auto b = get<std::uint32_t>(in);
      edges.push_back({a, b});
    }
    std::vector<std::uint8_t> ratings;
    if (get<std::uint8_t>(in)) {
      ratings.resize(m);
      in.read(reinterpret_cast<char*>(ratings.data()), static_cast<std::streamsize>(m));
      if (!in) throw Error("snapshot: unexpected end of file");
    }
    links.emplace_back(std::move(name), std::move(src), std::move(dst), std::move(edges),
                       std::move(ratings));
  }
  return Hin::build(std::move(groups), std::move(links), dataset);
}

std::string file_fingerprint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open file '" + path.string() + "'");
  std::uint64_t h = 0xCBF29CE484222325ULL;
  char buf[1 << 16];
  while (in) {
    in.read(buf, sizeof(buf));
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 0x100000001B3ULL;
    }
  }
  char hex[17];
  std::snprintf(hex, sizeof(hex), "%016llx", static_cast<unsigned long long>(h));
  return hex;
}

}  // namespace hinwalk
