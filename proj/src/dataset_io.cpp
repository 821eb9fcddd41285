#include "dataset_io.hpp"

#include <nlohmann/json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace sphtri {

using nlohmann::json;

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace {

double parse_double(const std::string& s, const std::string& context) {
    double v = 0.0;
    const char* begin = s.data();
    const char* end = begin + s.size();
    const auto res = std::from_chars(begin, end, v);
    if (res.ec != std::errc() || res.ptr != end) {
        throw Error(ErrorCode::schema, context + ": cannot parse number '" + s + "'");
    }
    return v;
}

long parse_long(const std::string& s, const std::string& context) {
    long v = 0;
    const char* begin = s.data();
    const char* end = begin + s.size();
    const auto res = std::from_chars(begin, end, v);
    if (res.ec != std::errc() || res.ptr != end) {
        throw Error(ErrorCode::schema, context + ": cannot parse integer '" + s + "'");
    }
    return v;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) {
        fields.push_back(field);
    }
    if (!line.empty() && line.back() == ',') {
        fields.emplace_back();
    }
    return fields;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::io, "cannot open '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

constexpr const char* kCorrHeaderShort = "point_id,image_a,ua,va,image_b,ub,vb";
constexpr const char* kCorrHeaderFull = "point_id,image_a,ua,va,image_b,ub,vb,gx,gy,gz";
constexpr const char* kResultHeader = "method,point_id,residual_s2,residual_p2,error_r3,status";

std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    return line;
}

}  // namespace

Dataset load_dataset(const std::string& calibration_path,
                     const std::string& correspondences_path) {
    Dataset ds;

    json calib;
    try {
        calib = json::parse(read_file(calibration_path));
    } catch (const json::exception& e) {
        throw Error(ErrorCode::schema,
                    std::string("calibration: json parse error: ") + e.what());
    }
    if (!calib.is_object() || !calib.contains("camera") || !calib.contains("images")) {
        throw Error(ErrorCode::schema, "calibration: expected 'camera' and 'images'");
    }
    ds.camera = camera_from_json(calib.at("camera").dump());
    if (!calib.at("images").is_array()) {
        throw Error(ErrorCode::schema, "calibration: 'images' must be an array");
    }
    for (const auto& img : calib.at("images")) {
        if (!img.is_object() || !img.contains("id") || !img.contains("rotation") ||
            !img.contains("translation")) {
            throw Error(ErrorCode::schema,
                        "calibration: image entries need id, rotation, translation");
        }
        const std::string id = img.at("id").get<std::string>();
        const auto& rot = img.at("rotation");
        const auto& tr = img.at("translation");
        if (!rot.is_array() || rot.size() != 9 || !tr.is_array() || tr.size() != 3) {
            throw Error(ErrorCode::schema, "calibration: image '" + id +
                                               "': rotation needs 9 entries, translation 3");
        }
        Mat3 R;
        for (int r = 0; r < 3; ++r) {
            for (int col = 0; col < 3; ++col) {
                R(r, col) = rot.at(3 * r + col).get<double>();
            }
        }
        const Vec3 t(tr.at(0).get<double>(), tr.at(1).get<double>(), tr.at(2).get<double>());
        Rotation orientation;
        try {
            orientation = Rotation::from_matrix(R);
        } catch (const Error& e) {
            throw Error(ErrorCode::schema,
                        "calibration: image '" + id + "': " + e.what());
        }
        const Vec3 centre = -(orientation.transposed() * t);
        if (!ds.poses.emplace(id, CameraPose{orientation, centre}).second) {
            throw Error(ErrorCode::schema, "calibration: duplicate image id '" + id + "'");
        }
    }

    std::ifstream in(correspondences_path);
    if (!in) {
        throw Error(ErrorCode::io, "cannot open '" + correspondences_path + "'");
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw Error(ErrorCode::schema, "correspondences: empty file");
    }
    line = strip_cr(line);
    bool has_gt = false;
    if (line == kCorrHeaderFull) {
        has_gt = true;
    } else if (line != kCorrHeaderShort) {
        throw Error(ErrorCode::schema, "correspondences: unexpected header '" + line + "'");
    }
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty()) {
            continue;
        }
        const auto fields = split_csv_line(line);
        const std::size_t expected = has_gt ? 10 : 7;
        const std::string context = "correspondences line " + std::to_string(line_no);
        if (fields.size() != expected) {
            throw Error(ErrorCode::schema, context + ": expected " +
                                               std::to_string(expected) + " fields, got " +
                                               std::to_string(fields.size()));
        }
        CorrespondenceRecord rec;
        rec.point_id = parse_long(fields[0], context);
        rec.image_a = fields[1];
        rec.pixel_a = {parse_double(fields[2], context), parse_double(fields[3], context)};
        rec.image_b = fields[4];
        rec.pixel_b = {parse_double(fields[5], context), parse_double(fields[6], context)};
        if (has_gt) {
            rec.ground_truth = Vec3(parse_double(fields[7], context),
                                    parse_double(fields[8], context),
                                    parse_double(fields[9], context));
        }
        for (const auto& image : {rec.image_a, rec.image_b}) {
            if (!ds.poses.count(image)) {
                throw Error(ErrorCode::schema,
                            context + ": unknown image id '" + image + "'");
            }
        }
        for (const auto& [pixel, which] :
             {std::pair{rec.pixel_a, 'a'}, std::pair{rec.pixel_b, 'b'}}) {
            if (!ds.camera->in_bounds(pixel)) {
                throw Error(ErrorCode::bounds,
                            context + ": point " + std::to_string(rec.point_id) +
                                " image_" + which + " pixel (" + format_double(pixel.u) +
                                ", " + format_double(pixel.v) + ") outside image bounds");
            }
            if (!ds.camera->unproject(pixel)) {
                throw Error(ErrorCode::model,
                            context + ": point " + std::to_string(rec.point_id) +
                                " image_" + which + " pixel cannot be unprojected");
            }
        }
        ds.records.push_back(std::move(rec));
    }
    return ds;
}

void write_calibration(const Dataset& dataset, const std::string& path) {
    json j;
    j["camera"] = json::parse(camera_to_json(*dataset.camera));
    j["images"] = json::array();
    for (const auto& [id, pose] : dataset.poses) {
        const Mat3& R = pose.orientation.matrix();
        const Vec3 t = -(R * pose.position);
        json img;
        img["id"] = id;
        img["rotation"] = {R(0, 0), R(0, 1), R(0, 2), R(1, 0), R(1, 1),
                           R(1, 2), R(2, 0), R(2, 1), R(2, 2)};
        img["translation"] = {t.x(), t.y(), t.z()};
        j["images"].push_back(img);
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error(ErrorCode::io, "cannot write '" + path + "'");
    }
    out << j.dump(2) << "\n";
}

void write_correspondences(const std::vector<CorrespondenceRecord>& records,
                           const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error(ErrorCode::io, "cannot write '" + path + "'");
    }
    const bool has_gt = !records.empty() && records.front().ground_truth.has_value();
    out << (has_gt ? kCorrHeaderFull : kCorrHeaderShort) << "\n";
    for (const auto& r : records) {
        out << r.point_id << ',' << r.image_a << ',' << format_double(r.pixel_a.u) << ','
            << format_double(r.pixel_a.v) << ',' << r.image_b << ','
            << format_double(r.pixel_b.u) << ',' << format_double(r.pixel_b.v);
        if (has_gt) {
            const Vec3 g = r.ground_truth.value_or(Vec3::Zero());
            out << ',' << format_double(g.x()) << ',' << format_double(g.y()) << ','
                << format_double(g.z());
        }
        out << "\n";
    }
}

void write_results(const std::vector<ResultRecord>& records, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error(ErrorCode::io, "cannot write '" + path + "'");
    }
    out << kResultHeader << "\n";
    for (const auto& r : records) {
        out << r.method << ',' << r.point_id << ',' << format_double(r.residual_s2) << ','
            << format_double(r.residual_p2) << ',' << format_double(r.error_r3) << ','
            << r.status << "\n";
    }
    if (!out) {
        throw Error(ErrorCode::io, "write failed for '" + path + "'");
    }
}

std::vector<ResultRecord> load_results(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::io, "cannot open '" + path + "'");
    }
    std::string line;
    if (!std::getline(in, line) || strip_cr(line) != kResultHeader) {
        throw Error(ErrorCode::schema, "results: unexpected header");
    }
    std::vector<ResultRecord> records;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty()) {
            continue;
        }
        const auto fields = split_csv_line(line);
        const std::string context = "results line " + std::to_string(line_no);
        if (fields.size() != 6) {
            throw Error(ErrorCode::schema, context + ": expected 6 fields");
        }
        ResultRecord r;
        r.method = fields[0];
        r.point_id = parse_long(fields[1], context);
        r.residual_s2 = parse_double(fields[2], context);
        r.residual_p2 = parse_double(fields[3], context);
        r.error_r3 = parse_double(fields[4], context);
        r.status = fields[5];
        records.push_back(std::move(r));
    }
    return records;
}

}  // namespace sphtri
