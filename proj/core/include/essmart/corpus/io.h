#ifndef ESSMART_CORPUS_IO_H_
#define ESSMART_CORPUS_IO_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "essmart/corpus/types.h"

namespace essmart::corpus {

enum class Format { kJsonl };

// Parses one JSONL request file. The whole file is rejected on the first
// malformed line (MalformedRecord, message carries the 1-based line number)
// or repeated id (DuplicateId). Blank lines are skipped.
std::vector<UserRequest> ingest_requests(const std::filesystem::path& path,
                                         Format format = Format::kJsonl);
std::vector<UserRequest> parse_requests(std::string_view contents);

// Validates and converts a single record; throws MalformedRecord.
UserRequest request_from_json(const nlohmann::json& j);
nlohmann::json to_json(const UserRequest& request);
nlohmann::json to_json(const DevelopmentTicket& ticket);
DevelopmentTicket ticket_from_json(const nlohmann::json& j, const std::string& request_id);

std::string serialize_requests(const std::vector<UserRequest>& requests);
void write_requests(const std::filesystem::path& path,
                    const std::vector<UserRequest>& requests);

// JSONL of {id, kind, text}.
std::vector<SourceDocument> ingest_documents(const std::filesystem::path& path);
std::vector<SourceDocument> parse_documents(std::string_view contents);

// CSV "name,role" rows; a header row "name,role" is skipped.
std::vector<std::pair<std::string, std::string>> ingest_personnel(
    const std::filesystem::path& path);
std::vector<std::pair<std::string, std::string>> parse_personnel(std::string_view contents);

std::string format_timestamp(Timestamp t);
Timestamp parse_timestamp(std::string_view text);

}  // namespace essmart::corpus

#endif  // ESSMART_CORPUS_IO_H_
