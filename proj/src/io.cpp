#include "specamb/io.hpp"

#include <fstream>
#include <sstream>

namespace specamb {

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::ParseError, "cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::ParseError, "cannot write '" + path + "'");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) fail(Errc::ParseError, "write failed for '" + path + "'");
}

Json load_json_file(const std::string& path) {
  const std::string text = read_text_file(path);
  Json doc = Json::parse(text, nullptr, false);
  if (doc.is_discarded()) fail(Errc::ParseError, "invalid JSON in '" + path + "'");
  return doc;
}

FileArity distribution_arity(const Json& doc) {
  const bool two = doc.contains("masses");
  const bool three = doc.contains("masses3");
  if (two && three) fail(Errc::ParseError, "file contains both 'masses' and 'masses3'");
  if (!two && !three) fail(Errc::ParseError, "file contains neither 'masses' nor 'masses3'");
  return two ? FileArity::Two : FileArity::Three;
}

}  // namespace specamb
