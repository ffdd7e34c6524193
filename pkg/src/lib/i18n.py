"""
国际化文本库 - 汉语/蒙古语（西里尔）/英语切换
Internationalization text library - Chinese/Mongolian (Cyrillic)/English switching
"""
from src.lib.config import LANGS, default_lang

# 语言文本字典
TEXTS = {
    # ==================== 通用 ====================
    "app_title": {
        "zh": "QSPBranch - U_q(su(3)) 分支规则",
        "mn": "QSPBranch - U_q(su(3)) салбарлах дүрэм",
        "en": "QSPBranch - branching rules for U_q(su(3))",
    },
    "passed": {"zh": "✅ 通过", "mn": "✅ Амжилттай", "en": "✅ passed"},
    "failed": {"zh": "❌ 失败", "mn": "❌ Амжилтгүй", "en": "❌ failed"},
    "error": {"zh": "❌ 错误", "mn": "❌ Алдаа", "en": "❌ error"},

    # ==================== dim ====================
    "dim_title": {
        "zh": "📐 表示 V_λ 的维数",
        "mn": "📐 V_λ дүрслэлийн хэмжээс",
        "en": "📐 Dimension of V_λ",
    },
    "dimension": {"zh": "维数", "mn": "Хэмжээс", "en": "dimension"},
    "layer": {"zh": "子空间", "mn": "Дэд огторгуй", "en": "subspace"},
    "size": {"zh": "大小", "mn": "Хэмжээ", "en": "size"},

    # ==================== branch ====================
    "branch_title": {
        "zh": "🌿 分支分解",
        "mn": "🌿 Салбарлах задаргаа",
        "en": "🌿 Branching decomposition",
    },
    "components": {"zh": "分量个数", "mn": "Бүрэлдэхүүний тоо", "en": "components"},
    "dim_sum": {"zh": "维数之和", "mn": "Хэмжээсийн нийлбэр", "en": "sum of dimensions"},
    "genericity_refused": {
        "zh": "参数不满足通有性条件：c2/c1 = -q^{s}",
        "mn": "Параметр ерөнхий нөхцөлийг хангахгүй: c2/c1 = -q^{s}",
        "en": "parameters are not generic: c2/c1 = -q^{s}",
    },

    # ==================== verify ====================
    "verify_title": {
        "zh": "🔍 恒等式检验",
        "mn": "🔍 Адилтгалын шалгалт",
        "en": "🔍 Identity checks",
    },
    "total_checks": {"zh": "检验条数", "mn": "Шалгалтын тоо", "en": "checks"},
    "first_failure": {"zh": "第一个失败的检验", "mn": "Эхний амжилтгүй шалгалт", "en": "first failing check"},
    "informational": {"zh": "印刷公式差异（仅供参考）", "mn": "Хэвлэсэн томьёоны зөрүү (лавлагаа)", "en": "printed-formula differences (informational)"},

    # ==================== export ====================
    "written_to": {"zh": "✅ 结果已保存到：", "mn": "✅ Үр дүнг хадгалсан：", "en": "✅ written to: "},
    "file_exists": {
        "zh": "文件已存在，使用 --force 覆盖：",
        "mn": "Файл аль хэдийн байна, --force ашиглан дарж бичнэ үү：",
        "en": "file exists, use --force to overwrite: ",
    },
}

_lang = default_lang()


def get_lang():
    """获取当前语言设置"""
    return _lang


def set_lang(lang):
    """设置语言"""
    global _lang
    if lang not in LANGS:
        raise ValueError(f"unknown language: {lang}")
    _lang = lang


def t(key):
    """获取翻译文本

    Args:
        key: 文本键名

    Returns:
        翻译后的文本，如果找不到返回键名
    """
    lang = get_lang()
    if key in TEXTS:
        return TEXTS[key].get(lang, TEXTS[key].get("zh", key))
    return key
