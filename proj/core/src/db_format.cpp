#include <fstream>
#include <istream>
#include <iterator>
#include <ostream>

#include "knnlrta/subgoal_db.hpp"

namespace knnlrta {
namespace {

constexpr char kMagic[7] = {'K', 'N', 'N', 'S', 'D', 'B', '1'};
constexpr std::uint8_t kVersion = 0x01;

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

class Reader {
 public:
  explicit Reader(const std::vector<std::uint8_t>& bytes) : bytes_(bytes) {}

  std::uint32_t u32(const char* what) {
    need(4, what);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(bytes_[pos_ + i]) << (8 * i);
    pos_ += 4;
    return v;
  }
  std::uint8_t u8(const char* what) {
    need(1, what);
    return bytes_[pos_++];
  }
  std::size_t remaining() const { return bytes_.size() - pos_; }

 private:
  void need(std::size_t n, const char* what) {
    if (remaining() < n) {
      throw DatabaseFormatError(DatabaseFormatError::Kind::Truncated,
                                std::string("database truncated while reading ") + what);
    }
  }
  const std::vector<std::uint8_t>& bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<std::uint8_t> serialize_database(const SubgoalDatabase& db) {
  std::vector<std::uint8_t> out;
  out.reserve(20 + 4 * (db.size() + db.stored_states()));
  out.insert(out.end(), std::begin(kMagic), std::end(kMagic));
  out.push_back(kVersion);
  put_u32(out, static_cast<std::uint32_t>(db.width()));
  put_u32(out, static_cast<std::uint32_t>(db.height()));
  put_u32(out, static_cast<std::uint32_t>(db.size()));
  const auto width = static_cast<std::uint32_t>(db.width());
  for (const auto& r : db.records()) {
    put_u32(out, static_cast<std::uint32_t>(r.states.size()));
    for (const auto& s : r.states) put_u32(out, static_cast<std::uint32_t>(s.y) * width + static_cast<std::uint32_t>(s.x));
  }
  return out;
}

void save_database(const SubgoalDatabase& db, std::ostream& out) {
  const auto bytes = serialize_database(db);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

SubgoalDatabase deserialize_database(const std::vector<std::uint8_t>& bytes, const GridMap& map) {
  using Kind = DatabaseFormatError::Kind;
  Reader in(bytes);
  for (char c : kMagic) {
    if (in.remaining() == 0) throw DatabaseFormatError(Kind::Truncated, "database truncated in magic");
    if (in.u8("magic") != static_cast<std::uint8_t>(c)) throw DatabaseFormatError(Kind::BadMagic, "bad database magic");
  }
  if (const auto v = in.u8("version"); v != kVersion) {
    throw DatabaseFormatError(Kind::BadVersion, "unsupported database version " + std::to_string(v));
  }
  const auto width = in.u32("width");
  const auto height = in.u32("height");
  if (width != static_cast<std::uint32_t>(map.width()) || height != static_cast<std::uint32_t>(map.height())) {
    throw DatabaseFormatError(Kind::DimensionMismatch, "database is for a " + std::to_string(width) + "x" +
                                                           std::to_string(height) + " map, given map is " +
                                                           std::to_string(map.width()) + "x" +
                                                           std::to_string(map.height()));
  }
  const auto n = in.u32("record count");
  const std::uint64_t cells = static_cast<std::uint64_t>(width) * height;
  std::vector<SubgoalRecord> records;
  records.reserve(std::min<std::size_t>(n, in.remaining() / 4));
  for (std::uint32_t r = 0; r < n; ++r) {
    const auto k = in.u32("record length");
    if (k < 2) throw DatabaseFormatError(Kind::InvalidRecord, "record " + std::to_string(r) + " has fewer than two states");
    if (in.remaining() / 4 < k) throw DatabaseFormatError(Kind::Truncated, "database truncated in record " + std::to_string(r));
    SubgoalRecord rec;
    rec.states.reserve(k);
    for (std::uint32_t i = 0; i < k; ++i) {
      const auto id = in.u32("state id");
      if (id >= cells) {
        throw DatabaseFormatError(Kind::StateOutOfBounds,
                                  "record " + std::to_string(r) + " has out-of-bounds state id " + std::to_string(id));
      }
      rec.states.push_back(map.coord(id));
    }
    records.push_back(std::move(rec));
  }
  if (in.remaining() != 0) throw DatabaseFormatError(Kind::TrailingData, "unexpected bytes after the last record");
  return SubgoalDatabase(map.width(), map.height(), std::move(records));
}

SubgoalDatabase load_database(std::istream& in, const GridMap& map) {
  std::vector<std::uint8_t> bytes{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return deserialize_database(bytes, map);
}

void save_database_file(const SubgoalDatabase& db, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write database file '" + path + "'");
  save_database(db, out);
  if (!out) throw std::runtime_error("failed writing database file '" + path + "'");
}

SubgoalDatabase load_database_file(const std::string& path, const GridMap& map) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open database file '" + path + "'");
  return load_database(in, map);
}

}  // namespace knnlrta
