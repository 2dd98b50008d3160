#include "veracity/http_backends.hpp"

#include <cctype>
#include <cstdlib>

#include <httplib.h>

#include "veracity/errors.hpp"

namespace veracity {

using nlohmann::json;

namespace {

httplib::Client make_client(const std::string& origin, std::chrono::seconds timeout) {
    httplib::Client client(origin);
    client.set_connection_timeout(std::chrono::seconds{10});
    client.set_read_timeout(timeout);
    client.set_write_timeout(timeout);
    client.set_follow_location(true);
    return client;
}

// Maps transport errors and HTTP status classes onto the retry contract.
void check_response(const httplib::Result& result, std::string_view what) {
    if (!result) {
        throw TransientBackendError(std::string(what) + ": transport error: " + httplib::to_string(result.error()));
    }
    const int status = result->status;
    if (status >= 200 && status < 300) return;
    const auto message = std::string(what) + ": HTTP " + std::to_string(status);
    if (status >= 500 || status == 429 || status == 408) throw TransientBackendError(message);
    throw BackendError(message);
}

httplib::Headers auth_headers(const HttpEndpoint& endpoint, bool bearer) {
    httplib::Headers headers;
    const auto key = api_key_from_env(endpoint);
    if (!key.empty()) {
        if (bearer) {
            headers.emplace("Authorization", "Bearer " + key);
        } else {
            headers.emplace("X-API-KEY", key);
        }
    }
    return headers;
}

std::string join_path(std::string_view base_path, std::string_view suffix) {
    std::string out(base_path);
    while (!out.empty() && out.back() == '/') out.pop_back();
    out += suffix;
    return out;
}

}  // namespace

std::string api_key_from_env(const HttpEndpoint& endpoint) {
    if (endpoint.api_key_env.empty()) return {};
    const char* value = std::getenv(endpoint.api_key_env.c_str());
    return value ? std::string(value) : std::string{};
}

SplitUrl split_url(std::string_view url) {
    std::size_t scheme_end = 0;
    if (url.starts_with("https://")) {
        scheme_end = 8;
    } else if (url.starts_with("http://")) {
        scheme_end = 7;
    } else {
        throw ConfigError("not an absolute http(s) URL: " + std::string(url));
    }
    const auto path_start = url.find_first_of("/?#", scheme_end);
    SplitUrl split;
    split.origin = std::string(url.substr(0, path_start));
    if (split.origin.size() == scheme_end) throw ConfigError("URL has no host: " + std::string(url));
    split.path = path_start == std::string_view::npos ? "/" : std::string(url.substr(path_start));
    if (split.path.front() != '/') split.path.insert(split.path.begin(), '/');
    if (auto hash = split.path.find('#'); hash != std::string::npos) split.path.erase(hash);
    return split;
}

json ChatCompletionsBackend::request_body(const CompletionRequest& request, std::string_view model) {
    json body = {
        {"model", model},
        {"messages", json::array({{{"role", "user"}, {"content", request.prompt}}})},
        {"max_tokens", request.max_tokens},
        {"temperature", request.temperature},
    };
    if (request.want_logprobs) body["logprobs"] = true;
    return body;
}

CompletionResult ChatCompletionsBackend::parse_response(const json& body) {
    const auto& choices = body.at("choices");
    if (!choices.is_array() || choices.empty()) throw BackendError("completion response has no choices");
    const auto& choice = choices.front();
    CompletionResult result;
    const auto& content = choice.at("message").at("content");
    result.text = content.is_string() ? content.get<std::string>() : std::string{};
    if (auto lp = choice.find("logprobs"); lp != choice.end() && lp->is_object()) {
        if (auto tokens = lp->find("content"); tokens != lp->end() && tokens->is_array()) {
            std::vector<TokenLogprob> parsed;
            for (const auto& t : *tokens) parsed.push_back({t.at("token").get<std::string>(), t.at("logprob").get<double>()});
            result.token_logprobs = std::move(parsed);
        }
    }
    if (auto usage = body.find("usage"); usage != body.end() && usage->is_object()) {
        result.prompt_tokens = usage->value("prompt_tokens", std::uint64_t{0});
        result.completion_tokens = usage->value("completion_tokens", std::uint64_t{0});
    }
    return result;
}

CompletionResult ChatCompletionsBackend::complete(const CompletionRequest& request) {
    const auto split = split_url(endpoint_.base_url);
    auto client = make_client(split.origin, endpoint_.timeout);
    const auto body = request_body(request, endpoint_.model).dump();
    auto result = client.Post(join_path(split.path, "/chat/completions"), auth_headers(endpoint_, true), body,
                              "application/json");
    check_response(result, "chat completion");
    try {
        return parse_response(json::parse(result->body));
    } catch (const json::exception& e) {
        throw BackendError(std::string("malformed completion response: ") + e.what());
    }
}

std::vector<SearchHit> SerpSearchBackend::parse_response(const json& body) {
    std::vector<SearchHit> hits;
    auto organic = body.find("organic");
    if (organic == body.end() || !organic->is_array()) return hits;
    for (const auto& item : *organic) {
        if (!item.contains("link")) continue;
        hits.push_back({item.value("title", std::string{}), item.at("link").get<std::string>(),
                        item.value("snippet", std::string{})});
    }
    return hits;
}

std::vector<SearchHit> SerpSearchBackend::search(std::string_view query, std::size_t k) {
    const auto split = split_url(endpoint_.base_url);
    auto client = make_client(split.origin, endpoint_.timeout);
    const json body = {{"q", query}, {"num", k}};
    auto result = client.Post(join_path(split.path, "/search"), auth_headers(endpoint_, false), body.dump(),
                              "application/json");
    check_response(result, "search");
    try {
        return parse_response(json::parse(result->body));
    } catch (const json::exception& e) {
        throw BackendError(std::string("malformed search response: ") + e.what());
    }
}

std::string ReaderServiceBackend::read_page(std::string_view url) {
    const auto split = split_url(endpoint_.base_url);
    auto client = make_client(split.origin, endpoint_.timeout);
    auto headers = auth_headers(endpoint_, true);
    headers.emplace("Accept", "text/plain");
    auto result = client.Get(join_path(split.path, "/") + std::string(url), headers);
    check_response(result, "reader " + std::string(url));
    return result->body;
}

std::string DirectFetchReader::read_page(std::string_view url) {
    const auto split = split_url(url);
    auto client = make_client(split.origin, timeout_);
    auto result = client.Get(split.path);
    check_response(result, "fetch " + std::string(url));
    const auto type = result->get_header_value("Content-Type");
    if (!type.empty() && type.find("text/") == std::string::npos && type.find("html") == std::string::npos &&
        type.find("xml") == std::string::npos) {
        throw BackendError("non-text content (" + type + ") at " + std::string(url));
    }
    if (type.find("html") != std::string::npos || type.empty()) return html_to_text(result->body);
    return result->body;
}

namespace {

bool iequal_prefix(std::string_view text, std::size_t pos, std::string_view prefix) {
    if (text.size() - pos < prefix.size()) return false;
    for (std::size_t i = 0; i < prefix.size(); ++i) {
        if (std::tolower(static_cast<unsigned char>(text[pos + i])) != prefix[i]) return false;
    }
    return true;
}

bool is_block_tag(std::string_view name) {
    static constexpr std::string_view kBlocks[] = {"p", "div", "br", "li", "ul", "ol", "h1", "h2", "h3", "h4",
                                                   "h5", "h6", "tr", "table", "section", "article", "header",
                                                   "footer", "blockquote", "pre", "title"};
    for (auto b : kBlocks) {
        if (name == b) return true;
    }
    return false;
}

// Unknown entities are kept verbatim.
void append_entity(std::string_view entity, std::string& out) {
    if (entity == "amp") out += '&';
    else if (entity == "lt") out += '<';
    else if (entity == "gt") out += '>';
    else if (entity == "quot") out += '"';
    else if (entity == "apos" || entity == "#39") out += '\'';
    else if (entity == "nbsp" || entity == "#160") out += ' ';
    else if (entity.starts_with("#")) {
        unsigned long code = 0;
        try {
            code = entity.size() > 1 && (entity[1] == 'x' || entity[1] == 'X')
                       ? std::stoul(std::string(entity.substr(2)), nullptr, 16)
                       : std::stoul(std::string(entity.substr(1)));
        } catch (...) {
            out.append("&").append(entity).append(";");
            return;
        }
        if (code < 0x80) {
            out += static_cast<char>(code);
        } else if (code < 0x800) {
            out += static_cast<char>(0xC0 | (code >> 6));
            out += static_cast<char>(0x80 | (code & 0x3F));
        } else if (code < 0x10000) {
            out += static_cast<char>(0xE0 | (code >> 12));
            out += static_cast<char>(0x80 | ((code >> 6) & 0x3F));
            out += static_cast<char>(0x80 | (code & 0x3F));
        } else if (code < 0x110000) {
            out += static_cast<char>(0xF0 | (code >> 18));
            out += static_cast<char>(0x80 | ((code >> 12) & 0x3F));
            out += static_cast<char>(0x80 | ((code >> 6) & 0x3F));
            out += static_cast<char>(0x80 | (code & 0x3F));
        }
    } else {
        out.append("&").append(entity).append(";");
    }
}

}  // namespace

std::string html_to_text(std::string_view html) {
    std::string raw;
    raw.reserve(html.size());
    std::size_t i = 0;
    while (i < html.size()) {
        const char c = html[i];
        if (c == '<') {
            if (html.substr(i, 4) == "<!--") {
                const auto end = html.find("-->", i + 4);
                i = end == std::string_view::npos ? html.size() : end + 3;
                continue;
            }
            const auto close = html.find('>', i);
            if (close == std::string_view::npos) break;
            std::size_t name_start = i + 1;
            if (name_start < close && html[name_start] == '/') ++name_start;
            std::size_t name_end = name_start;
            while (name_end < close && std::isalnum(static_cast<unsigned char>(html[name_end]))) ++name_end;
            std::string name(html.substr(name_start, name_end - name_start));
            for (auto& ch : name) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
            const bool opening = html[i + 1] != '/';
            if (opening && (name == "script" || name == "style" || name == "head" || name == "noscript")) {
                const std::string end_tag = "</" + name;
                std::size_t j = close + 1;
                while (j < html.size() && !iequal_prefix(html, j, end_tag)) ++j;
                const auto end_close = html.find('>', j);
                i = end_close == std::string_view::npos ? html.size() : end_close + 1;
                continue;
            }
            raw += is_block_tag(name) ? '\n' : ' ';
            i = close + 1;
        } else if (c == '&') {
            const auto semi = html.find(';', i);
            if (semi != std::string_view::npos && semi - i <= 10) {
                append_entity(html.substr(i + 1, semi - i - 1), raw);
                i = semi + 1;
            } else {
                raw += c;
                ++i;
            }
        } else {
            raw += c;
            ++i;
        }
    }

    // Collapse horizontal whitespace; keep at most one blank line.
    std::string out;
    out.reserve(raw.size());
    int newlines = 0;
    bool space = false;
    for (char ch : raw) {
        if (ch == '\n' || ch == '\r') {
            ++newlines;
            space = false;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(ch))) {
            space = true;
            continue;
        }
        if (!out.empty()) {
            if (newlines > 0) {
                out += newlines > 1 ? "\n\n" : "\n";
            } else if (space) {
                out += ' ';
            }
        }
        newlines = 0;
        space = false;
        out += ch;
    }
    return out;
}

}  // namespace veracity
