#include "speedscale/trace.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

namespace speedscale {

namespace {

std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (true) {
        std::size_t next = line.find(sep, pos);
        if (next == std::string::npos) {
            out.push_back(line.substr(pos));
            break;
        }
        out.push_back(line.substr(pos, next - pos));
        pos = next + 1;
    }
    return out;
}

long long parse_int(const std::string& s, const std::string& path, std::size_t lineno) {
    long long value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw std::runtime_error("parse-error: " + path + ":" + std::to_string(lineno) +
                                 ": expected integer, got '" + s + "'");
    return value;
}

double parse_real(const std::string& s, const std::string& path, std::size_t lineno) {
    try {
        std::size_t used = 0;
        double value = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return value;
    } catch (const std::exception&) {
        throw std::runtime_error("parse-error: " + path + ":" + std::to_string(lineno) +
                                 ": expected number, got '" + s + "'");
    }
}

constexpr const char* kJobHeader = "id,release,deadline,work";
constexpr const char* kPredHeader = "id,p,q";

// EPA trace timestamps look like [DD:HH:MM:SS]; plain integer seconds are
// also accepted.
long long parse_epa_timestamp(const std::string& stamp, const std::string& path,
                              std::size_t lineno) {
    std::vector<std::string> parts = split(stamp, ':');
    if (parts.size() == 1) return parse_int(parts[0], path, lineno);
    if (parts.size() != 4)
        throw std::runtime_error("parse-error: " + path + ":" + std::to_string(lineno) +
                                 ": bad timestamp '" + stamp + "'");
    long long dd = parse_int(parts[0], path, lineno);
    long long hh = parse_int(parts[1], path, lineno);
    long long mm = parse_int(parts[2], path, lineno);
    long long ss = parse_int(parts[3], path, lineno);
    return ((dd * 24 + hh) * 60 + mm) * 60 + ss;
}

struct Request {
    long long second;
    double bytes;
};

Request parse_epa_line(const std::string& line, const std::string& path,
                       std::size_t lineno) {
    std::size_t open = line.find('[');
    std::size_t close = line.find(']', open == std::string::npos ? 0 : open);
    if (open == std::string::npos || close == std::string::npos)
        throw std::runtime_error("parse-error: " + path + ":" + std::to_string(lineno) +
                                 ": missing [timestamp]");
    long long second =
        parse_epa_timestamp(line.substr(open + 1, close - open - 1), path, lineno);

    std::size_t q1 = line.find('"', close);
    std::size_t q2 = q1 == std::string::npos ? std::string::npos : line.find('"', q1 + 1);
    if (q2 == std::string::npos)
        throw std::runtime_error("parse-error: " + path + ":" + std::to_string(lineno) +
                                 ": missing quoted request");
    std::istringstream tail(line.substr(q2 + 1));
    std::string status, bytes;
    if (!(tail >> status >> bytes))
        throw std::runtime_error("parse-error: " + path + ":" + std::to_string(lineno) +
                                 ": missing status/bytes");
    double b = bytes == "-" ? 0.0 : static_cast<double>(parse_int(bytes, path, lineno));
    return {second, b};
}

}  // namespace

Instance read_job_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("io-error: cannot open " + path);
    std::string line;
    std::size_t lineno = 0;
    std::vector<Job> jobs;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++lineno;
        line = strip_cr(line);
        if (line.empty()) continue;
        if (!header_seen) {
            if (line != kJobHeader)
                throw std::runtime_error("parse-error: " + path + ":1: expected header '" +
                                         kJobHeader + "'");
            header_seen = true;
            continue;
        }
        std::vector<std::string> cols = split(line, ',');
        if (cols.size() != 4)
            throw std::runtime_error("parse-error: " + path + ":" + std::to_string(lineno) +
                                     ": expected 4 columns");
        Job j;
        j.id = parse_int(cols[0], path, lineno);
        j.release = parse_int(cols[1], path, lineno);
        j.deadline = parse_int(cols[2], path, lineno);
        j.work = parse_real(cols[3], path, lineno);
        jobs.push_back(j);
    }
    return Instance(std::move(jobs));
}

void write_job_csv(const Instance& instance, const std::string& path) {
    std::ofstream out(path, std::ios::binary);  // LF endings everywhere
    if (!out) throw std::runtime_error("io-error: cannot write " + path);
    out << kJobHeader << '\n';
    char buf[64];
    for (const Job& j : instance.jobs()) {
        std::snprintf(buf, sizeof buf, "%.17g", j.work);
        out << j.id << ',' << j.release << ',' << j.deadline << ',' << buf << '\n';
    }
    if (!out) throw std::runtime_error("io-error: failed writing " + path);
}

PredictedInstance read_prediction_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("io-error: cannot open " + path);
    std::string line;
    std::size_t lineno = 0;
    std::vector<JobPrediction> preds;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++lineno;
        line = strip_cr(line);
        if (line.empty()) continue;
        if (!header_seen) {
            if (line != kPredHeader)
                throw std::runtime_error("parse-error: " + path + ":1: expected header '" +
                                         kPredHeader + "'");
            header_seen = true;
            continue;
        }
        std::vector<std::string> cols = split(line, ',');
        if (cols.size() != 3)
            throw std::runtime_error("parse-error: " + path + ":" + std::to_string(lineno) +
                                     ": expected 3 columns");
        preds.push_back({parse_int(cols[0], path, lineno), parse_int(cols[1], path, lineno),
                         parse_int(cols[2], path, lineno)});
    }
    return PredictedInstance(std::move(preds));
}

void write_prediction_csv(const PredictedInstance& preds, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("io-error: cannot write " + path);
    out << kPredHeader << '\n';
    for (const JobPrediction& e : preds.entries())
        out << e.id << ',' << e.p << ',' << e.q << '\n';
    if (!out) throw std::runtime_error("io-error: failed writing " + path);
}

Instance ingest_http_trace(const std::string& path, Slot window, double work_scale,
                           std::size_t job_limit) {
    if (window <= 0) throw std::invalid_argument("invalid-parameter: window must be positive");
    std::ifstream in(path);
    if (!in) throw std::runtime_error("io-error: cannot open " + path);

    std::string first;
    if (!std::getline(in, first)) return Instance();  // empty file, empty instance
    if (strip_cr(first) == kJobHeader) return read_job_csv(path);

    in.clear();
    in.seekg(0);
    std::string line;
    std::size_t lineno = 0;
    std::vector<Request> requests;
    while (requests.size() < job_limit && std::getline(in, line)) {
        ++lineno;
        line = strip_cr(line);
        if (line.empty()) continue;
        requests.push_back(parse_epa_line(line, path, lineno));
    }
    if (requests.empty()) return Instance();

    if (work_scale <= 0.0) {
        double total_bytes = 0.0;
        for (const Request& r : requests) total_bytes += r.bytes;
        // mean density ~ 1: total work should equal window * n
        work_scale = total_bytes > 0.0
                         ? static_cast<double>(window) * static_cast<double>(requests.size()) /
                               total_bytes
                         : 1.0;
    }

    long long base = requests.front().second;
    std::vector<Job> jobs;
    jobs.reserve(requests.size());
    JobId id = 0;
    for (const Request& r : requests) {
        Slot release = r.second - base;
        jobs.push_back({id++, release, release + window, r.bytes * work_scale});
    }
    return Instance(std::move(jobs));
}

}  // namespace speedscale
