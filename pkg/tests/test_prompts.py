import pytest

from cwgen.prompts import Lang, PromptTemplate, TemplateName, load_all, load_template


class TestTemplates:
    @pytest.mark.parametrize("lang", [Lang.EN, Lang.AR])
    def test_all_templates_load(self, lang):
        templates = load_all(lang)
        assert set(templates) == set(TemplateName)

    def test_render_fills_placeholders(self):
        template = load_template(TemplateName.KEYWORD_EXTRACT, Lang.AR)
        rendered = template.render(text="فقرة تجريبية")
        assert "فقرة تجريبية" in rendered
        assert "{text}" not in rendered

    def test_clue_template_needs_both_placeholders(self):
        template = load_template(TemplateName.CLUE_GENERATE, Lang.EN)
        rendered = template.render(text="نص", keywords="أسد")
        assert "{keywords}" not in rendered

    def test_missing_placeholder_rejected(self):
        with pytest.raises(ValueError, match="missing placeholders"):
            PromptTemplate(TemplateName.CLUE_GENERATE, Lang.EN, "Text: {text}")

    def test_groundedness_template_lists_clues(self):
        template = load_template(TemplateName.GROUNDEDNESS_CHECK, Lang.AR)
        rendered = template.render(text="نص", clues="لغز أول\nلغز ثان")
        assert "لغز أول" in rendered
